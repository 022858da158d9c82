#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "iolb/bound_report.hpp"
#include "iolb/cdag.hpp"
#include "iolb/games.hpp"
#include "iolb/heuristic.hpp"

namespace iolb {

struct OracleResult {
    std::int64_t optimum = 0;
    std::vector<RbwMove> trace;  // an optimal game
    std::size_t states = 0;      // distinct states stored
    bool closed_by_heuristic = false;  // heuristic game met the admissible lower bound

    [[nodiscard]] BoundReport report(Game game, std::int64_t S) const {
        BoundReport r;
        r.kind = BoundKind::exact;
        r.method = Method::bruteforce;
        r.value = BoundValue(optimum);
        r.symbolic = "IO(C)";
        r.param("game", to_string(game)).param("S", S).param("states", static_cast<std::int64_t>(states));
        if (closed_by_heuristic) r.notes.emplace_back("heuristic game cost equals the admissible lower bound");
        return r;
    }
};

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(VertexId v) { return Mask{1} << static_cast<unsigned>(v); }
inline int popcount(Mask m) { return std::popcount(m); }

struct OracleGraph {
    std::size_t n = 0;
    std::vector<Mask> preds, succs;
    Mask inputs = 0, outputs = 0, all = 0;

    explicit OracleGraph(const Cdag& g) : n(g.size()), preds(g.size(), 0), succs(g.size(), 0) {
        if (g.size() > 64) throw Error("exhaustive oracle supports at most 64 vertices");
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = static_cast<VertexId>(i);
            for (VertexId p : g.preds(v)) preds[i] |= bit(p);
            for (VertexId s : g.succs(v)) succs[i] |= bit(s);
            if (g.is_input(v)) inputs |= bit(v);
            if (g.is_output(v)) outputs |= bit(v);
            all |= bit(v);
        }
    }
};

struct State {
    Mask red = 0, white = 0, blue = 0;
    friend bool operator==(const State&, const State&) = default;
};

struct StateHash {
    std::size_t operator()(const State& s) const {
        std::uint64_t h = s.red * 0x9E3779B97F4A7C15ULL;
        h ^= (s.white + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
        h ^= (s.blue + 0x165667B19E3779F9ULL) * 0x94D049BB133111EBULL;
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

// Macro transition; expanded into concrete moves when the trace is rebuilt.
struct Macro {
    enum class Kind : std::uint8_t { none, load, compute, store } kind = Kind::none;
    std::int8_t vertex = -1;
    std::int8_t victim = -1;
};

struct Node {
    State state;
    std::int64_t g = 0;
    std::int64_t parent = -1;
    Macro how;
};

class Search {
  public:
    Search(const Cdag& cdag, std::int64_t S, Game game, std::size_t budget)
        : g_(cdag), G_(cdag), S_(S), game_(game), budget_(budget) {}

    OracleResult run() {
        if (S_ < 1) throw Error("S must be >= 1");
        if (budget_ == 0) throw Error("budget must be > 0");
        require_valid(g_, game_ == Game::rb ? Convention::hk : Convention::rbw);
        for (std::size_t i = 0; i < G_.n; ++i) {
            const bool input = (G_.inputs >> i) & 1U;
            const int need = input ? 1 : popcount(G_.preds[i]) + 1;
            // Inputs without successors still need one load in rbw; under rb they are free.
            if (input && (game_ == Game::rb || G_.succs[i] != 0)) continue;
            if (need > S_)
                throw Infeasible("infeasible: vertex " + std::to_string(i) + " needs " + std::to_string(need) +
                                 " red pebbles, S=" + std::to_string(S_));
        }

        std::optional<HeuristicGame> heur;
        try {
            heur = heuristic_game(g_, S_);
        } catch (const Error&) {}
        std::optional<std::int64_t> ub;
        if (heur) ub = heur->tally.io();

        const State start = canonical(State{0, 0, game_ == Game::rb ? G_.inputs : 0});
        const std::int64_t h0 = h(start);
        if (ub && *ub == h0) return from_heuristic(*heur);

        // Bucket queue keyed by f = g + h; LIFO within a bucket.
        std::vector<std::vector<std::int64_t>> buckets;
        auto push = [&](std::int64_t idx, std::int64_t f) {
            if (static_cast<std::size_t>(f) >= buckets.size()) buckets.resize(static_cast<std::size_t>(f) + 1);
            buckets[static_cast<std::size_t>(f)].push_back(idx);
        };
        add(start, 0, -1, {});
        push(0, h0);
        std::int64_t f_cur = h0;
        while (true) {
            while (static_cast<std::size_t>(f_cur) < buckets.size() && buckets[static_cast<std::size_t>(f_cur)].empty())
                ++f_cur;
            if (static_cast<std::size_t>(f_cur) >= buckets.size()) break;
            if (ub && f_cur >= *ub) break;
            const std::int64_t idx = buckets[static_cast<std::size_t>(f_cur)].back();
            buckets[static_cast<std::size_t>(f_cur)].pop_back();
            const Node node = nodes_[static_cast<std::size_t>(idx)];
            if (node.g + h(node.state) != f_cur) continue;  // stale entry
            if (goal(node.state)) return rebuild(idx);
            expand(node.state, [&](const State& next, std::int64_t cost, Macro how) {
                const std::int64_t g2 = node.g + cost;
                auto it = index_.find(next);
                if (it != index_.end()) {
                    Node& old = nodes_[static_cast<std::size_t>(it->second)];
                    if (old.g <= g2) return;
                    old.g = g2;
                    old.parent = idx;
                    old.how = how;
                    push(it->second, g2 + h(next));
                    return;
                }
                if (nodes_.size() >= budget_) {
                    throw BudgetExhausted("oracle state budget of " + std::to_string(budget_) + " exhausted", ub,
                                          f_cur);
                }
                const std::int64_t nidx = add(next, g2, idx, how);
                push(nidx, g2 + h(next));
            });
        }
        if (ub) return from_heuristic(*heur);
        throw Infeasible("infeasible: no complete game exists with S=" + std::to_string(S_));
    }

  private:
    std::int64_t add(const State& s, std::int64_t g, std::int64_t parent, Macro how) {
        const auto idx = static_cast<std::int64_t>(nodes_.size());
        nodes_.push_back({s, g, parent, how});
        index_.emplace(s, idx);
        return idx;
    }

    [[nodiscard]] std::int64_t h(const State& s) const {
        if (game_ == Game::rb) return popcount(G_.outputs & ~s.blue);
        const Mask todo = ~s.white & G_.all;
        return popcount(G_.inputs & todo) + popcount(G_.outputs & ~G_.inputs & todo);
    }

    [[nodiscard]] bool goal(const State& s) const {
        if (game_ == Game::rb) return (G_.outputs & ~s.blue) == 0;
        return s.white == G_.all;
    }

    // rbw: a vertex is live while it has an unfired successor.
    [[nodiscard]] Mask live(Mask white) const {
        Mask m = 0;
        for (std::size_t i = 0; i < G_.n; ++i)
            if (((white >> i) & 1U) && (G_.succs[i] & ~white) != 0) m |= Mask{1} << i;
        return m;
    }

    [[nodiscard]] State canonical(State s) const {
        if (game_ == Game::rb) return s;
        const Mask lv = live(s.white);
        s.red &= lv;
        s.blue &= lv & ~G_.inputs & ~G_.outputs;
        return s;
    }

    [[nodiscard]] bool is_blue(const State& s, std::size_t v) const {
        if (game_ == Game::rb) return (s.blue >> v) & 1U;
        const Mask b = Mask{1} << v;
        return (s.blue & b) || (G_.inputs & b) || (G_.outputs & b & s.white);
    }

    // Candidate victims when a slot is needed: any red vertex outside `pinned`;
    // rbw additionally requires the victim to be blue-backed (spills are explicit stores).
    template <class F>
    void with_slot(const State& s, Mask pinned, F&& f) const {
        if (popcount(s.red) < S_) {
            f(s.red, std::int8_t{-1});
            return;
        }
        for (Mask m = s.red & ~pinned; m; m &= m - 1) {
            const auto v = static_cast<std::size_t>(std::countr_zero(m));
            if (game_ == Game::rbw && !is_blue(s, v)) continue;
            f(s.red & ~(Mask{1} << v), static_cast<std::int8_t>(v));
        }
    }

    template <class F>
    void expand(const State& s, F&& emit) const {
        const Mask lv = game_ == Game::rbw ? live(s.white) : 0;
        for (std::size_t v = 0; v < G_.n; ++v) {
            const Mask b = Mask{1} << v;
            const bool input = G_.inputs & b;
            if (game_ == Game::rbw) {
                const bool white = s.white & b;
                // load
                if (!(s.red & b)) {
                    const bool first_input = input && !white;
                    const bool reload = white && (lv & b) && is_blue(s, v);
                    if (first_input || reload) {
                        with_slot(s, 0, [&](Mask red, std::int8_t victim) {
                            State n{red | b, s.white | b, s.blue};
                            emit(canonical(n), 1, Macro{Macro::Kind::load, static_cast<std::int8_t>(v), victim});
                        });
                    }
                }
                // compute
                if (!input && !white && (G_.preds[v] & ~s.red) == 0) {
                    const std::int64_t cost = (G_.outputs & b) ? 1 : 0;
                    with_slot(s, G_.preds[v], [&](Mask red, std::int8_t victim) {
                        State n{red | b, s.white | b, s.blue};
                        emit(canonical(n), cost, Macro{Macro::Kind::compute, static_cast<std::int8_t>(v), victim});
                    });
                }
                // store (spill) a live computed value
                if ((s.red & b) && !is_blue(s, v)) {
                    State n{s.red, s.white, s.blue | b};
                    emit(canonical(n), 1, Macro{Macro::Kind::store, static_cast<std::int8_t>(v), -1});
                }
            } else {
                if (!(s.red & b) && (s.blue & b)) {
                    with_slot(s, 0, [&](Mask red, std::int8_t victim) {
                        emit(State{red | b, 0, s.blue}, 1, Macro{Macro::Kind::load, static_cast<std::int8_t>(v), victim});
                    });
                }
                if (!input && !(s.red & b) && (G_.preds[v] & ~s.red) == 0) {
                    with_slot(s, G_.preds[v], [&](Mask red, std::int8_t victim) {
                        emit(State{red | b, 0, s.blue}, 0,
                             Macro{Macro::Kind::compute, static_cast<std::int8_t>(v), victim});
                    });
                }
                if ((s.red & b) && !(s.blue & b)) {
                    emit(State{s.red, 0, s.blue | b}, 1, Macro{Macro::Kind::store, static_cast<std::int8_t>(v), -1});
                }
            }
        }
    }

    OracleResult from_heuristic(const HeuristicGame& hg) const {
        OracleResult r;
        r.optimum = hg.tally.io();
        r.trace = hg.trace;
        r.states = nodes_.size();
        r.closed_by_heuristic = true;
        return r;
    }

    OracleResult rebuild(std::int64_t goal_idx) const {
        std::vector<std::int64_t> path;
        for (std::int64_t i = goal_idx; i >= 0; i = nodes_[static_cast<std::size_t>(i)].parent) path.push_back(i);
        std::reverse(path.begin(), path.end());
        OracleResult r;
        r.optimum = nodes_[static_cast<std::size_t>(goal_idx)].g;
        r.states = nodes_.size();
        for (std::size_t k = 1; k < path.size(); ++k) {
            const Node& prev = nodes_[static_cast<std::size_t>(path[k - 1])];
            const Node& cur = nodes_[static_cast<std::size_t>(path[k])];
            const auto v = static_cast<VertexId>(cur.how.vertex);
            Mask red = prev.state.red;
            if (cur.how.victim >= 0) {
                r.trace.push_back(remove(cur.how.victim));
                red &= ~bit(cur.how.victim);
            }
            switch (cur.how.kind) {
                case Macro::Kind::load:
                    r.trace.push_back(load(v));
                    red |= bit(v);
                    break;
                case Macro::Kind::compute:
                    r.trace.push_back(compute(v));
                    red |= bit(v);
                    if (game_ == Game::rbw && (G_.outputs & bit(v))) r.trace.push_back(store(v));
                    break;
                case Macro::Kind::store:
                    r.trace.push_back(store(v));
                    break;
                case Macro::Kind::none:
                    break;
            }
            for (Mask dead = red & ~cur.state.red; dead; dead &= dead - 1)
                r.trace.push_back(remove(static_cast<VertexId>(std::countr_zero(dead))));
        }
        return r;
    }

    const Cdag& g_;
    OracleGraph G_;
    std::int64_t S_;
    Game game_;
    std::size_t budget_;
    std::vector<Node> nodes_;
    std::unordered_map<State, std::int64_t, StateHash> index_;
};

}  // namespace detail

inline constexpr std::size_t default_oracle_budget = 4'000'000;

// Exact minimum I/O (R1 + R2 moves) over all complete games, by A* over
// canonical game states with an admissible count of unavoidable loads/stores.
inline OracleResult optimal_io(const Cdag& g, std::int64_t S, Game game, std::size_t budget = default_oracle_budget) {
    detail::Search search(g, S, game, budget);
    return search.run();
}

}  // namespace iolb
