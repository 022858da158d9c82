#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "iolb/cdag.hpp"
#include "iolb/error.hpp"

namespace iolb {

// Dinic max-flow on a small dense-id network.
class FlowNetwork {
  public:
    using Cap = std::int64_t;
    static constexpr Cap inf = std::numeric_limits<Cap>::max() / 4;

    explicit FlowNetwork(std::size_t n) : adj_(n), level_(n), it_(n) {}

    void add_arc(std::size_t u, std::size_t v, Cap cap) {
        adj_[u].push_back(arcs_.size());
        arcs_.push_back({v, cap});
        adj_[v].push_back(arcs_.size());
        arcs_.push_back({u, 0});
    }

    Cap max_flow(std::size_t s, std::size_t t) {
        Cap flow = 0;
        while (bfs(s, t)) {
            std::fill(it_.begin(), it_.end(), 0);
            while (Cap f = dfs(s, t, inf)) flow += f;
        }
        return flow;
    }

    // Nodes reachable from s in the residual graph (the source side of a min cut).
    [[nodiscard]] std::vector<bool> reachable(std::size_t s) const {
        std::vector<bool> seen(adj_.size(), false);
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto a : adj_[u])
                if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = true;
                    stack.push_back(arcs_[a].to);
                }
        }
        return seen;
    }

  private:
    struct Arc {
        std::size_t to;
        Cap cap;
    };

    bool bfs(std::size_t s, std::size_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            for (auto a : adj_[u])
                if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
                    level_[arcs_[a].to] = level_[u] + 1;
                    q.push(arcs_[a].to);
                }
        }
        return level_[t] >= 0;
    }

    Cap dfs(std::size_t u, std::size_t t, Cap f) {
        if (u == t) return f;
        for (auto& i = it_[u]; i < adj_[u].size(); ++i) {
            auto a = adj_[u][i];
            auto v = arcs_[a].to;
            if (arcs_[a].cap <= 0 || level_[v] != level_[u] + 1) continue;
            if (Cap got = dfs(v, t, std::min(f, arcs_[a].cap))) {
                arcs_[a].cap -= got;
                arcs_[a ^ 1].cap += got;
                return got;
            }
        }
        return 0;
    }

    std::vector<std::vector<std::size_t>> adj_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<std::size_t> it_;
};

struct Wavefront {
    VertexId anchor = 0;
    VertexSet s_side;
    VertexSet t_side;
    VertexSet cut_vertices;  // members of s_side with an edge into t_side, plus the anchor
    std::int64_t size = 0;
};

// Members of s with at least one successor outside s.
inline VertexSet cut_of(const Cdag& g, const std::vector<bool>& in_s) {
    VertexSet cut;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!in_s[i]) continue;
        for (VertexId w : g.succs(static_cast<VertexId>(i)))
            if (!in_s[static_cast<std::size_t>(w)]) {
                cut.insert(static_cast<VertexId>(i));
                break;
            }
    }
    return cut;
}

// Minimum wavefront induced by x: the vertex min-cut over convex cuts with
// {x} and its ancestors on the S side and its descendants on the T side.
// Every vertex v becomes v_in -> v_out (capacity 1); a DAG edge (u,w) gives
// u_out -> w_in and the closure arc w_in -> u_in, both infinite, so the S side
// is ancestor-closed and a vertex pays only when some successor is cut off.
inline Wavefront wavefront_min(const Cdag& g, VertexId x) {
    if (!g.contains(x)) throw Error("unknown vertex " + std::to_string(x));
    const std::size_t n = g.size();
    const auto anc = ancestors(g, x);
    const auto desc = descendants(g, x);
    const std::size_t src = 2 * n, snk = 2 * n + 1;
    auto in = [](std::size_t v) { return 2 * v; };
    auto out = [](std::size_t v) { return 2 * v + 1; };
    FlowNetwork net(2 * n + 2);
    for (std::size_t v = 0; v < n; ++v) {
        net.add_arc(in(v), out(v), 1);
        for (VertexId w : g.succs(static_cast<VertexId>(v))) {
            net.add_arc(out(v), in(static_cast<std::size_t>(w)), FlowNetwork::inf);
            net.add_arc(in(static_cast<std::size_t>(w)), in(v), FlowNetwork::inf);
        }
        if (anc[v] || v == static_cast<std::size_t>(x)) net.add_arc(src, in(v), FlowNetwork::inf);
        if (desc[v] && v != static_cast<std::size_t>(x)) net.add_arc(in(v), snk, FlowNetwork::inf);
    }
    const auto flow = net.max_flow(src, snk);
    const auto side = net.reachable(src);

    Wavefront wf;
    wf.anchor = x;
    std::vector<bool> in_s(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        in_s[v] = side[in(v)];
        (in_s[v] ? wf.s_side : wf.t_side).insert(static_cast<VertexId>(v));
    }
    // Post-hoc checks on the recovered cut; a failure is a construction bug.
    for (std::size_t v = 0; v < n; ++v) {
        if ((anc[v] || v == static_cast<std::size_t>(x)) && !in_s[v])
            throw Error("wavefront construction: ancestor of the anchor on the T side");
        if (desc[v] && v != static_cast<std::size_t>(x) && in_s[v])
            throw Error("wavefront construction: descendant of the anchor on the S side");
        if (!in_s[v])
            for (VertexId w : g.succs(static_cast<VertexId>(v)))
                if (in_s[static_cast<std::size_t>(w)]) throw Error("wavefront construction: cut is not convex");
    }
    wf.cut_vertices = cut_of(g, in_s);
    if (static_cast<std::int64_t>(wf.cut_vertices.size()) != flow)
        throw Error("wavefront construction: cut size differs from the max-flow value");
    wf.cut_vertices.insert(x);
    wf.size = static_cast<std::int64_t>(wf.cut_vertices.size());
    return wf;
}

// Largest minimum wavefront over the candidates (all vertices by default).
inline std::int64_t wmax(const Cdag& g, const std::optional<std::vector<VertexId>>& candidates = std::nullopt) {
    std::int64_t best = 0;
    if (candidates) {
        for (VertexId x : *candidates) best = std::max(best, wavefront_min(g, x).size);
    } else {
        for (std::size_t v = 0; v < g.size(); ++v) best = std::max(best, wavefront_min(g, static_cast<VertexId>(v)).size);
    }
    return best;
}

}  // namespace iolb
