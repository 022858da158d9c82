#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <list>
#include <string>
#include <vector>

#include "iolb/cdag.hpp"
#include "iolb/games.hpp"

namespace iolb {

struct HeuristicGame {
    std::vector<RbwMove> trace;
    IoTally tally;
    std::vector<VertexId> order;  // firing order of the non-input vertices
};

namespace detail {

// Greedy list schedule: among ready vertices prefer those with the most
// predecessors resident in an S-slot LRU model, then the lowest id.
inline std::vector<VertexId> greedy_order(const Cdag& g, std::int64_t S) {
    const std::size_t n = g.size();
    std::vector<std::size_t> missing(n, 0);
    std::vector<bool> done(n, false);
    std::vector<VertexId> ready;
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<VertexId>(i);
        if (g.is_input(v)) continue;
        for (VertexId p : g.preds(v))
            if (!g.is_input(p)) ++missing[i];
        if (missing[i] == 0) ready.push_back(v);
    }
    std::list<VertexId> lru;  // front = most recent
    std::vector<bool> cached(n, false);
    auto touch = [&](VertexId v) {
        const auto i = static_cast<std::size_t>(v);
        if (cached[i]) lru.remove(v);
        lru.push_front(v);
        cached[i] = true;
        while (static_cast<std::int64_t>(lru.size()) > S) {
            cached[static_cast<std::size_t>(lru.back())] = false;
            lru.pop_back();
        }
    };
    std::vector<VertexId> order;
    order.reserve(n);
    while (!ready.empty()) {
        std::size_t best = 0;
        long best_score = -1;
        for (std::size_t k = 0; k < ready.size(); ++k) {
            const VertexId v = ready[k];
            long resident = 0;
            for (VertexId p : g.preds(v))
                if (cached[static_cast<std::size_t>(p)]) ++resident;
            const bool all = resident == static_cast<long>(g.in_degree(v));
            const long score = (all ? 1L << 40 : 0) + resident * (1L << 20);
            if (score > best_score || (score == best_score && v < ready[best])) {
                best_score = score;
                best = k;
            }
        }
        const VertexId v = ready[best];
        ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(best));
        order.push_back(v);
        done[static_cast<std::size_t>(v)] = true;
        for (VertexId p : g.preds(v)) touch(p);
        touch(v);
        for (VertexId w : g.succs(v))
            if (--missing[static_cast<std::size_t>(w)] == 0) ready.push_back(w);
    }
    return order;
}

}  // namespace detail

// Valid RBW game for an upper bound: greedy firing order, then Belady
// eviction (furthest next use) on that order. Outputs are stored as soon as
// they fire; inputs nobody consumes are loaded at the end.
inline HeuristicGame heuristic_game(const Cdag& g, std::int64_t S) {
    require_valid(g, Convention::rbw);
    if (S < 1) throw Error("S must be >= 1");
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto v = static_cast<VertexId>(i);
        if (!g.is_input(v) && static_cast<std::int64_t>(g.in_degree(v)) + 1 > S)
            throw Infeasible("S too small for in-degree: vertex " + std::to_string(v) + " has " +
                             std::to_string(g.in_degree(v)) + " predecessors, S=" + std::to_string(S));
    }
    HeuristicGame out;
    out.order = detail::greedy_order(g, S);
    const std::size_t n = g.size();
    if (out.order.size() != g.size() - g.input_count()) throw Error("graph is not acyclic");

    // uses[v] = positions in the order where v is read.
    std::vector<std::vector<std::size_t>> uses(n);
    for (std::size_t pos = 0; pos < out.order.size(); ++pos)
        for (VertexId p : g.preds(out.order[pos])) uses[static_cast<std::size_t>(p)].push_back(pos);
    std::vector<std::size_t> cursor(n, 0);
    constexpr std::size_t never = std::numeric_limits<std::size_t>::max();
    auto next_use = [&](VertexId v, std::size_t now) {
        auto& u = uses[static_cast<std::size_t>(v)];
        auto& c = cursor[static_cast<std::size_t>(v)];
        while (c < u.size() && u[c] < now) ++c;
        return c < u.size() ? u[c] : never;
    };

    std::vector<bool> red(n, false), blue(n, false);
    for (std::size_t i = 0; i < n; ++i) blue[i] = g.is_input(static_cast<VertexId>(i));
    std::vector<VertexId> resident;
    auto emit = [&](RbwMove mv) { out.trace.push_back(mv); };

    // Frees one slot, never evicting anything in `pinned`.
    auto make_room = [&](std::size_t now, const std::vector<VertexId>& pinned) {
        while (static_cast<std::int64_t>(resident.size()) >= S) {
            std::size_t victim = resident.size();
            std::size_t far = 0;
            for (std::size_t k = 0; k < resident.size(); ++k) {
                const VertexId r = resident[k];
                if (std::find(pinned.begin(), pinned.end(), r) != pinned.end()) continue;
                const std::size_t nu = next_use(r, now);
                if (victim == resident.size() || nu > far || (nu == far && r < resident[victim])) {
                    victim = k;
                    far = nu;
                }
            }
            if (victim == resident.size()) throw Error("heuristic could not free a red pebble");
            const VertexId r = resident[victim];
            if (far != never && !blue[static_cast<std::size_t>(r)]) {
                emit(store(r));
                blue[static_cast<std::size_t>(r)] = true;
            }
            emit(remove(r));
            red[static_cast<std::size_t>(r)] = false;
            resident.erase(resident.begin() + static_cast<std::ptrdiff_t>(victim));
        }
    };

    for (std::size_t pos = 0; pos < out.order.size(); ++pos) {
        const VertexId v = out.order[pos];
        std::vector<VertexId> pinned(g.preds(v).begin(), g.preds(v).end());
        for (VertexId p : g.preds(v)) {
            if (red[static_cast<std::size_t>(p)]) continue;
            make_room(pos, pinned);
            emit(load(p));
            red[static_cast<std::size_t>(p)] = true;
            resident.push_back(p);
        }
        make_room(pos, pinned);
        emit(compute(v));
        red[static_cast<std::size_t>(v)] = true;
        resident.push_back(v);
        if (g.is_output(v)) {
            emit(store(v));
            blue[static_cast<std::size_t>(v)] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<VertexId>(i);
        if (g.is_input(v) && g.out_degree(v) == 0) {
            make_room(out.order.size(), {});
            emit(load(v));
            red[i] = true;
            resident.push_back(v);
        }
    }
    out.tally = validate_rbw(g, S, out.trace);
    return out;
}

}  // namespace iolb
