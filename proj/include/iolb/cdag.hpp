#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "iolb/error.hpp"

namespace iolb {

using VertexId = std::int32_t;
using VertexSet = std::set<VertexId>;

class CdagBuilder;

// Computational DAG (I, V, E, O). Vertices are the dense range [0, size()).
// Immutable once built; construct through CdagBuilder. The builder rejects
// duplicate edges and unknown endpoints but does not check acyclicity: that is
// validate()'s job, so malformed inputs can be reported rather than thrown.
class Cdag {
  public:
    Cdag() = default;

    [[nodiscard]] std::size_t size() const { return preds_.size(); }
    [[nodiscard]] bool empty() const { return preds_.empty(); }
    [[nodiscard]] std::size_t edge_count() const { return edge_count_; }

    [[nodiscard]] std::span<const VertexId> preds(VertexId v) const { return preds_.at(index(v)); }
    [[nodiscard]] std::span<const VertexId> succs(VertexId v) const { return succs_.at(index(v)); }
    [[nodiscard]] std::size_t in_degree(VertexId v) const { return preds(v).size(); }
    [[nodiscard]] std::size_t out_degree(VertexId v) const { return succs(v).size(); }

    [[nodiscard]] bool is_input(VertexId v) const { return input_.at(index(v)); }
    [[nodiscard]] bool is_output(VertexId v) const { return output_.at(index(v)); }
    [[nodiscard]] const std::string& label(VertexId v) const { return labels_.at(index(v)); }

    [[nodiscard]] bool contains(VertexId v) const { return v >= 0 && static_cast<std::size_t>(v) < size(); }

    [[nodiscard]] bool has_edge(VertexId u, VertexId v) const {
        auto s = succs(u);
        return std::find(s.begin(), s.end(), v) != s.end();
    }

    [[nodiscard]] std::vector<VertexId> inputs() const { return collect(input_); }
    [[nodiscard]] std::vector<VertexId> outputs() const { return collect(output_); }
    [[nodiscard]] std::size_t input_count() const { return std::count(input_.begin(), input_.end(), true); }
    [[nodiscard]] std::size_t output_count() const { return std::count(output_.begin(), output_.end(), true); }

    [[nodiscard]] std::size_t max_in_degree() const {
        std::size_t m = 0;
        for (const auto& p : preds_) m = std::max(m, p.size());
        return m;
    }

    // Edges as (src, dst), ordered by src then insertion order.
    [[nodiscard]] std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(edge_count_);
        for (std::size_t u = 0; u < size(); ++u)
            for (VertexId v : succs_[u]) out.emplace_back(static_cast<VertexId>(u), v);
        return out;
    }

    // Kahn order; empty optional-like result (size < |V|) signals a cycle.
    [[nodiscard]] std::vector<VertexId> topological_order() const {
        std::vector<std::size_t> indeg(size());
        std::vector<VertexId> order;
        order.reserve(size());
        for (std::size_t v = 0; v < size(); ++v) {
            indeg[v] = preds_[v].size();
            if (indeg[v] == 0) order.push_back(static_cast<VertexId>(v));
        }
        for (std::size_t head = 0; head < order.size(); ++head) {
            for (VertexId w : succs_[static_cast<std::size_t>(order[head])]) {
                if (--indeg[static_cast<std::size_t>(w)] == 0) order.push_back(w);
            }
        }
        return order;
    }

    [[nodiscard]] bool is_acyclic() const { return topological_order().size() == size(); }

    friend bool operator==(const Cdag& a, const Cdag& b) {
        return a.preds_ == b.preds_ && a.input_ == b.input_ && a.output_ == b.output_ && a.labels_ == b.labels_;
    }

  private:
    friend class CdagBuilder;

    [[nodiscard]] std::size_t index(VertexId v) const {
        if (!contains(v)) throw Error("unknown vertex " + std::to_string(v));
        return static_cast<std::size_t>(v);
    }

    static std::vector<VertexId> collect(const std::vector<bool>& flags) {
        std::vector<VertexId> out;
        for (std::size_t v = 0; v < flags.size(); ++v)
            if (flags[v]) out.push_back(static_cast<VertexId>(v));
        return out;
    }

    std::vector<std::vector<VertexId>> preds_;
    std::vector<std::vector<VertexId>> succs_;
    std::vector<bool> input_;
    std::vector<bool> output_;
    std::vector<std::string> labels_;
    std::size_t edge_count_ = 0;
};

class CdagBuilder {
  public:
    CdagBuilder() = default;

    // Starts from an existing graph (same ids), e.g. to add tags.
    explicit CdagBuilder(Cdag base) : g_(std::move(base)) {}

    VertexId add_vertex(bool input = false, bool output = false, std::string label = {}) {
        g_.preds_.emplace_back();
        g_.succs_.emplace_back();
        g_.input_.push_back(input);
        g_.output_.push_back(output);
        g_.labels_.push_back(std::move(label));
        return static_cast<VertexId>(g_.preds_.size() - 1);
    }

    void add_edge(VertexId u, VertexId v) {
        check(u);
        check(v);
        auto& s = g_.succs_[static_cast<std::size_t>(u)];
        if (std::find(s.begin(), s.end(), v) != s.end())
            throw Error("duplicate edge " + std::to_string(u) + " -> " + std::to_string(v));
        s.push_back(v);
        g_.preds_[static_cast<std::size_t>(v)].push_back(u);
        ++g_.edge_count_;
    }

    void set_input(VertexId v, bool on = true) {
        check(v);
        g_.input_[static_cast<std::size_t>(v)] = on;
    }
    void set_output(VertexId v, bool on = true) {
        check(v);
        g_.output_[static_cast<std::size_t>(v)] = on;
    }
    void set_label(VertexId v, std::string label) {
        check(v);
        g_.labels_[static_cast<std::size_t>(v)] = std::move(label);
    }

    [[nodiscard]] std::size_t size() const { return g_.size(); }
    [[nodiscard]] const Cdag& peek() const { return g_; }

    Cdag build() && { return std::move(g_); }
    [[nodiscard]] Cdag build() const& { return g_; }

  private:
    void check(VertexId v) const {
        if (!g_.contains(v)) throw Error("unknown vertex " + std::to_string(v));
    }

    Cdag g_;
};

// ---------------------------------------------------------------------------
// Validation

enum class Convention { hk, rbw };

struct Violation {
    std::string kind;  // "cycle", "self-loop", "input-has-predecessor", "source-not-input", "sink-not-output"
    VertexId vertex = -1;
    std::string message;
};

// Every invariant violation under the chosen convention. rbw allows untagged
// sources and sinks; hk additionally requires every source in I and every sink in O.
inline std::vector<Violation> validate(const Cdag& g, Convention mode) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto v = static_cast<VertexId>(i);
        if (g.has_edge(v, v)) out.push_back({"self-loop", v, "self-loop on vertex " + std::to_string(v)});
    }
    const auto order = g.topological_order();
    if (order.size() != g.size()) {
        std::vector<bool> placed(g.size(), false);
        for (VertexId v : order) placed[static_cast<std::size_t>(v)] = true;
        VertexId first = -1;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (!placed[i]) {
                first = static_cast<VertexId>(i);
                break;
            }
        out.push_back({"cycle", first, "edge relation has a cycle through vertex " + std::to_string(first)});
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto v = static_cast<VertexId>(i);
        if (g.is_input(v) && g.in_degree(v) > 0)
            out.push_back({"input-has-predecessor", v, "input vertex " + std::to_string(v) + " has predecessors"});
        if (mode == Convention::hk) {
            if (g.in_degree(v) == 0 && !g.is_input(v))
                out.push_back({"source-not-input", v, "vertex " + std::to_string(v) + " has no predecessor but is not an input"});
            if (g.out_degree(v) == 0 && !g.is_output(v))
                out.push_back({"sink-not-output", v, "vertex " + std::to_string(v) + " has no successor but is not an output"});
        }
    }
    return out;
}

inline bool is_valid(const Cdag& g, Convention mode) { return validate(g, mode).empty(); }

inline void require_valid(const Cdag& g, Convention mode) {
    auto v = validate(g, mode);
    if (!v.empty())
        throw Error(std::string("invalid CDAG (") + (mode == Convention::hk ? "hk" : "rbw") + "): " + v.front().message);
}

// ---------------------------------------------------------------------------
// Graph surgeries

// Sub-CDAG induced by a vertex block, renumbered densely in increasing id order.
struct InducedCdag {
    Cdag cdag;
    std::vector<VertexId> original;  // local id -> id in the parent graph

    [[nodiscard]] VertexId local_of(VertexId parent_id) const {
        auto it = std::lower_bound(original.begin(), original.end(), parent_id);
        if (it == original.end() || *it != parent_id) return -1;
        return static_cast<VertexId>(it - original.begin());
    }
};

// (I ∩ block, block, E ∩ block×block, O ∩ block).
inline InducedCdag induced_subcdag(const Cdag& g, const VertexSet& block) {
    for (VertexId v : block)
        if (!g.contains(v)) throw Error("unknown vertex " + std::to_string(v));
    InducedCdag out;
    out.original.assign(block.begin(), block.end());
    CdagBuilder b;
    for (VertexId v : out.original) b.add_vertex(g.is_input(v), g.is_output(v), g.label(v));
    for (std::size_t lu = 0; lu < out.original.size(); ++lu) {
        for (VertexId w : g.succs(out.original[lu])) {
            const VertexId lw = out.local_of(w);
            if (lw >= 0) b.add_edge(static_cast<VertexId>(lu), lw);
        }
    }
    out.cdag = std::move(b).build();
    return out;
}

// Tags predecessor-free vertices dI as inputs and dO as outputs.
inline Cdag retag(const Cdag& g, const VertexSet& add_inputs, const VertexSet& add_outputs) {
    CdagBuilder b(g);
    for (VertexId v : add_inputs) {
        if (!g.contains(v)) throw Error("unknown vertex " + std::to_string(v));
        if (g.in_degree(v) > 0) throw Error("cannot tag interior vertex as input: " + std::to_string(v));
        if (g.is_input(v)) throw Error("vertex " + std::to_string(v) + " is already an input");
        b.set_input(v);
    }
    for (VertexId v : add_outputs) {
        if (!g.contains(v)) throw Error("unknown vertex " + std::to_string(v));
        if (g.is_output(v)) throw Error("vertex " + std::to_string(v) + " is already an output");
        b.set_output(v);
    }
    return std::move(b).build();
}

// Removes all input/output tags (vertices and edges unchanged).
inline Cdag untagged(const Cdag& g) {
    CdagBuilder b(g);
    for (std::size_t v = 0; v < g.size(); ++v) {
        b.set_input(static_cast<VertexId>(v), false);
        b.set_output(static_cast<VertexId>(v), false);
    }
    return std::move(b).build();
}

// Ancestors / descendants of v, excluding v.
inline std::vector<bool> ancestors(const Cdag& g, VertexId v) {
    std::vector<bool> seen(g.size(), false);
    std::vector<VertexId> stack(g.preds(v).begin(), g.preds(v).end());
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        if (seen[static_cast<std::size_t>(u)]) continue;
        seen[static_cast<std::size_t>(u)] = true;
        for (VertexId p : g.preds(u)) stack.push_back(p);
    }
    return seen;
}

inline std::vector<bool> descendants(const Cdag& g, VertexId v) {
    std::vector<bool> seen(g.size(), false);
    std::vector<VertexId> stack(g.succs(v).begin(), g.succs(v).end());
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        if (seen[static_cast<std::size_t>(u)]) continue;
        seen[static_cast<std::size_t>(u)] = true;
        for (VertexId s : g.succs(u)) stack.push_back(s);
    }
    return seen;
}

}  // namespace iolb
