#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "iolb/bound_report.hpp"
#include "iolb/cdag.hpp"
#include "iolb/error.hpp"
#include "iolb/games.hpp"
#include "iolb/wavefront.hpp"

namespace iolb {

enum class PartitionMode { hk, rbw };

struct SPartitionBlock {
    VertexSet vertices;
    std::int64_t in_size = 0;   // RBW: |In|; HK: minimum dominator size
    std::int64_t out_size = 0;  // RBW: |Out|; HK: minimum set size
};

struct SPartitionCertificate {
    PartitionMode mode = PartitionMode::rbw;
    std::int64_t S = 0;
    std::vector<SPartitionBlock> blocks;
};

// In(U): vertices outside U with a successor in U.
inline VertexSet in_set(const Cdag& g, const VertexSet& U) {
    VertexSet out;
    for (VertexId u : U)
        for (VertexId p : g.preds(u))
            if (!U.count(p)) out.insert(p);
    return out;
}

// Out(U): vertices of U that are outputs or have a successor outside U.
inline VertexSet out_set(const Cdag& g, const VertexSet& U) {
    VertexSet out;
    for (VertexId u : U) {
        if (g.is_output(u)) {
            out.insert(u);
            continue;
        }
        for (VertexId w : g.succs(u))
            if (!U.count(w)) {
                out.insert(u);
                break;
            }
    }
    return out;
}

// Smallest vertex set meeting every path from an input into U (inputs and
// members of U may belong to it).
inline std::int64_t min_dominator_size(const Cdag& g, const VertexSet& U) {
    const std::size_t n = g.size();
    const std::size_t src = 2 * n, snk = 2 * n + 1;
    FlowNetwork net(2 * n + 2);
    for (std::size_t v = 0; v < n; ++v) {
        const auto id = static_cast<VertexId>(v);
        net.add_arc(2 * v, 2 * v + 1, 1);
        for (VertexId w : g.succs(id)) net.add_arc(2 * v + 1, 2 * static_cast<std::size_t>(w), FlowNetwork::inf);
        if (g.is_input(id)) net.add_arc(src, 2 * v, FlowNetwork::inf);
        if (U.count(id)) net.add_arc(2 * v + 1, snk, FlowNetwork::inf);
    }
    return net.max_flow(src, snk);
}

// Checks every block condition and returns a list of human-readable problems.
inline std::vector<std::string> check_spartition(const Cdag& g, const SPartitionCertificate& cert) {
    std::vector<std::string> problems;
    std::vector<int> owner(g.size(), -1);
    for (std::size_t b = 0; b < cert.blocks.size(); ++b)
        for (VertexId v : cert.blocks[b].vertices) {
            if (!g.contains(v)) {
                problems.push_back("block " + std::to_string(b) + ": unknown vertex " + std::to_string(v));
                continue;
            }
            if (cert.mode == PartitionMode::rbw && g.is_input(v))
                problems.push_back("block " + std::to_string(b) + ": input vertex " + std::to_string(v));
            auto& o = owner[static_cast<std::size_t>(v)];
            if (o >= 0) problems.push_back("vertex " + std::to_string(v) + " in two blocks");
            o = static_cast<int>(b);
        }
    for (std::size_t v = 0; v < g.size(); ++v) {
        const bool needed = cert.mode == PartitionMode::hk || !g.is_input(static_cast<VertexId>(v));
        if (needed && owner[v] < 0) problems.push_back("vertex " + std::to_string(v) + " not covered");
    }
    if (!problems.empty()) return problems;

    // No circuit between blocks: the quotient graph must be acyclic.
    const std::size_t h = cert.blocks.size();
    std::vector<std::set<std::size_t>> qs(h);
    std::vector<std::size_t> indeg(h, 0);
    for (const auto& [u, w] : g.edges()) {
        const int a = owner[static_cast<std::size_t>(u)], b = owner[static_cast<std::size_t>(w)];
        if (a >= 0 && b >= 0 && a != b && qs[static_cast<std::size_t>(a)].insert(static_cast<std::size_t>(b)).second)
            ++indeg[static_cast<std::size_t>(b)];
    }
    std::vector<std::size_t> ready;
    for (std::size_t b = 0; b < h; ++b)
        if (indeg[b] == 0) ready.push_back(b);
    std::size_t seen = 0;
    while (!ready.empty()) {
        auto b = ready.back();
        ready.pop_back();
        ++seen;
        for (auto c : qs[b])
            if (--indeg[c] == 0) ready.push_back(c);
    }
    if (seen != h) problems.emplace_back("circuit between blocks");

    for (std::size_t b = 0; b < h; ++b) {
        const auto& U = cert.blocks[b].vertices;
        std::int64_t in_sz = 0, out_sz = 0;
        if (cert.mode == PartitionMode::rbw) {
            in_sz = static_cast<std::int64_t>(in_set(g, U).size());
            out_sz = static_cast<std::int64_t>(out_set(g, U).size());
        } else {
            in_sz = min_dominator_size(g, U);
            for (VertexId u : U) {
                bool child_inside = false;
                for (VertexId w : g.succs(u)) child_inside = child_inside || U.count(w) > 0;
                if (!child_inside) ++out_sz;
            }
        }
        const std::string tag = "block " + std::to_string(b);
        if (in_sz > cert.S) problems.push_back(tag + ": input/dominator set " + std::to_string(in_sz) + " > S");
        if (out_sz > cert.S) problems.push_back(tag + ": output/minimum set " + std::to_string(out_sz) + " > S");
    }
    return problems;
}

// Segments a complete RBW game into runs of S I/O moves; the vertices fired
// in each run form one block of a 2S-partition of V - I.
inline SPartitionCertificate partition_from_game(const Cdag& g, std::int64_t S, const std::vector<RbwMove>& trace) {
    if (S < 1) throw Error("S must be >= 1");
    SPartitionCertificate cert;
    cert.mode = PartitionMode::rbw;
    cert.S = 2 * S;
    SPartitionBlock cur;
    std::int64_t io = 0;
    auto flush = [&] {
        if (!cur.vertices.empty()) cert.blocks.push_back(cur);
        cur = {};
        io = 0;
    };
    for (const auto& mv : trace) {
        const bool costly = mv.kind == RbwMove::Kind::Input || mv.kind == RbwMove::Kind::Output;
        if (costly && io == S) flush();
        if (costly) ++io;
        if (mv.kind == RbwMove::Kind::Compute) cur.vertices.insert(mv.vertex);
    }
    flush();
    for (auto& b : cert.blocks) {
        b.in_size = static_cast<std::int64_t>(in_set(g, b.vertices).size());
        b.out_size = static_cast<std::int64_t>(out_set(g, b.vertices).size());
    }
    return cert;
}

struct UmaxResult {
    std::int64_t umax = 0;
    VertexSet witness;
    std::uint64_t examined = 0;
};

inline constexpr std::uint64_t default_umax_budget = 1ULL << 24;

// Largest convex U over V - I with |In(U)| <= 2S and |Out(U)| <= 2S. Subsets
// are visited by decreasing size, so the first hit is the maximum. On budget
// exhaustion at size k the exception carries k as a proven upper bound.
inline UmaxResult umax_bruteforce(const Cdag& g, std::int64_t twoS, std::uint64_t budget = default_umax_budget) {
    if (twoS < 1) throw Error("2S must be >= 1");
    if (budget == 0) throw Error("budget must be > 0");
    if (g.size() > 64) throw Error("umax brute force supports at most 64 vertices");
    using Mask = std::uint64_t;
    const std::size_t n = g.size();
    const auto order = g.topological_order();
    if (order.size() != n) throw Error("graph is not acyclic");

    std::vector<Mask> pred(n, 0), succ(n, 0), anc(n, 0), desc(n, 0);
    Mask outputs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<VertexId>(i);
        for (VertexId p : g.preds(v)) pred[i] |= Mask{1} << p;
        for (VertexId w : g.succs(v)) succ[i] |= Mask{1} << w;
        if (g.is_output(v)) outputs |= Mask{1} << i;
    }
    for (VertexId v : order) {
        const auto i = static_cast<std::size_t>(v);
        for (VertexId p : g.preds(v)) anc[i] |= anc[static_cast<std::size_t>(p)] | (Mask{1} << p);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto i = static_cast<std::size_t>(*it);
        for (VertexId w : g.succs(*it)) desc[i] |= desc[static_cast<std::size_t>(w)] | (Mask{1} << w);
    }

    std::vector<std::size_t> cand;  // non-input vertices
    for (std::size_t i = 0; i < n; ++i)
        if (!g.is_input(static_cast<VertexId>(i))) cand.push_back(i);
    const std::size_t m = cand.size();
    UmaxResult res;
    if (m == 0) return res;
    if (m > 62) throw Error("umax brute force supports at most 62 non-input vertices");

    auto expand = [&](Mask local) {
        Mask U = 0;
        while (local) {
            const auto k = static_cast<std::size_t>(std::countr_zero(local));
            U |= Mask{1} << cand[k];
            local &= local - 1;
        }
        return U;
    };
    auto qualifies = [&](Mask U) {
        Mask a = 0, d = 0, in = 0, out = U & outputs;
        for (Mask r = U; r; r &= r - 1) {
            const auto i = static_cast<std::size_t>(std::countr_zero(r));
            a |= anc[i];
            d |= desc[i];
            in |= pred[i];
            if (succ[i] & ~U) out |= Mask{1} << i;
        }
        if ((a & d) & ~U) return false;  // some path leaves U and re-enters
        return std::popcount(in & ~U) <= twoS && std::popcount(out) <= twoS;
    };

    for (std::size_t k = m; k >= 1; --k) {
        Mask local = (Mask{1} << k) - 1;
        const Mask limit = Mask{1} << m;
        while (local < limit) {
            if (res.examined++ >= budget)
                throw BudgetExhausted("umax budget exhausted after " + std::to_string(budget) +
                                          " subsets; umax <= " + std::to_string(k),
                                      static_cast<std::int64_t>(k), std::nullopt);
            const Mask U = expand(local);
            if (qualifies(U)) {
                res.umax = static_cast<std::int64_t>(k);
                for (Mask r = U; r; r &= r - 1) res.witness.insert(static_cast<VertexId>(std::countr_zero(r)));
                return res;
            }
            // Gosper's hack: next subset of the same size.
            const Mask c = local & (~local + 1);
            const Mask r = local + c;
            local = (((r ^ local) >> 2) / c) | r;
        }
    }
    return res;
}

// Q >= S * (h - 1) with h >= ceil(|V - I| / umax) blocks in any 2S-partition.
inline BoundReport spart_lower_bound(const Cdag& g, std::int64_t S, std::int64_t umax) {
    if (umax < 1) throw Error("umax must be >= 1");
    if (S < 1) throw Error("S must be >= 1");
    const auto v = static_cast<std::int64_t>(g.size() - g.input_count());
    BoundReport r;
    r.kind = BoundKind::lower;
    r.method = Method::spart;
    const std::int64_t h = v == 0 ? 0 : (v + umax - 1) / umax;
    r.value = BoundValue(std::max<std::int64_t>(0, S * (h - 1)));
    r.symbolic = "S*(ceil(|V-I|/umax) - 1)";
    r.param("S", S).param("umax", umax).param("|V-I|", v);
    r.notes.emplace_back("block count h is an integer, so |V-I|/umax is rounded up");
    return r;
}

}  // namespace iolb
