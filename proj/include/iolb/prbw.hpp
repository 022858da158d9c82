#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "iolb/cdag.hpp"
#include "iolb/cdag_io.hpp"
#include "iolb/error.hpp"
#include "iolb/games.hpp"

namespace iolb {

enum class CachePolicy { inclusive, exclusive };

// L-level memory tree. Level 1 units are the processors' register files,
// level L units the main memories. Levels and units are 1- and 0-based.
struct HierarchyConfig {
    int L = 1;
    std::vector<std::int64_t> N;  // N[l-1] units at level l
    std::vector<std::int64_t> S;  // S[l-1] capacity of each level-l unit
    std::int64_t P = 1;
    std::vector<std::vector<std::int64_t>> parent;  // parent[l-1][unit] at level l+1, for l < L
    CachePolicy policy = CachePolicy::inclusive;

    [[nodiscard]] std::int64_t units(int level) const { return N.at(static_cast<std::size_t>(level - 1)); }
    [[nodiscard]] std::int64_t capacity(int level) const { return S.at(static_cast<std::size_t>(level - 1)); }
    [[nodiscard]] std::int64_t parent_of(int level, std::int64_t unit) const {
        return parent.at(static_cast<std::size_t>(level - 1)).at(static_cast<std::size_t>(unit));
    }

    // Throws on the first violated invariant.
    void check() const {
        if (L < 1) throw Error("hierarchy needs at least one level");
        if (N.size() != static_cast<std::size_t>(L) || S.size() != static_cast<std::size_t>(L))
            throw Error("hierarchy must give units and capacity for every level");
        for (int l = 1; l <= L; ++l) {
            if (units(l) < 1) throw Error("level " + std::to_string(l) + " needs at least one unit");
            if (capacity(l) < 1) throw Error("level " + std::to_string(l) + " needs capacity >= 1");
            if (l < L && units(l) < units(l + 1))
                throw Error("unit counts must not increase with level (N_" + std::to_string(l) + " < N_" +
                            std::to_string(l + 1) + ")");
        }
        if (P != units(1)) throw Error("processor count must equal the level-1 unit count");
        if (parent.size() != static_cast<std::size_t>(L - 1)) throw Error("parent map must cover levels 1..L-1");
        for (int l = 1; l < L; ++l) {
            const auto& pm = parent[static_cast<std::size_t>(l - 1)];
            if (pm.size() != static_cast<std::size_t>(units(l)))
                throw Error("every level-" + std::to_string(l) + " unit needs exactly one parent");
            for (auto p : pm)
                if (p < 0 || p >= units(l + 1))
                    throw Error("parent of a level-" + std::to_string(l) + " unit is out of range");
        }
    }

    // Single-level, single-processor configuration (the sequential RBW game).
    static HierarchyConfig sequential(std::int64_t S1) {
        HierarchyConfig c;
        c.L = 1;
        c.N = {1};
        c.S = {S1};
        c.P = 1;
        return c;
    }
};

struct PrbwMove {
    enum class Kind { Input, Output, RemoteGet, MoveUp, MoveDown, Compute, Delete };
    Kind kind = Kind::Input;
    VertexId vertex = 0;
    int level = 0;  // R4, R5, R7; R1/R2/R3 act at level L, R6 at level 1
    std::int64_t unit = 0;  // destination unit (R3), processor (R6)
    std::optional<std::int64_t> src_unit;  // R3 source; R5 counterpart child

    friend bool operator==(const PrbwMove&, const PrbwMove&) = default;
};

inline const char* rule_name(PrbwMove::Kind k) {
    switch (k) {
        case PrbwMove::Kind::Input: return "R1";
        case PrbwMove::Kind::Output: return "R2";
        case PrbwMove::Kind::RemoteGet: return "R3";
        case PrbwMove::Kind::MoveUp: return "R4";
        case PrbwMove::Kind::MoveDown: return "R5";
        case PrbwMove::Kind::Compute: return "R6";
        case PrbwMove::Kind::Delete: return "R7";
    }
    return "?";
}

using UnitKey = std::pair<int, std::int64_t>;  // (level, unit)

// R3 counted at the destination unit, R4 at the unit that receives the pebble
// (the child), R5 at the child that held the source pebble.
struct PrbwTally {
    std::map<UnitKey, std::int64_t> vertical_down;  // R5 per child unit
    std::map<UnitKey, std::int64_t> vertical_up;    // R4 per receiving unit
    std::map<std::int64_t, std::int64_t> horizontal;  // R3 per level-L destination
    std::map<std::int64_t, std::int64_t> loads;       // R1 per level-L unit
    std::map<std::int64_t, std::int64_t> stores;      // R2 per level-L unit
    std::map<std::int64_t, std::int64_t> computes;    // R6 per processor
    std::int64_t deletes = 0;

    [[nodiscard]] static std::int64_t total(const std::map<std::int64_t, std::int64_t>& m) {
        std::int64_t t = 0;
        for (const auto& [k, v] : m) t += v;
        return t;
    }
    [[nodiscard]] std::int64_t io_blue() const { return total(loads) + total(stores); }
    [[nodiscard]] std::int64_t horizontal_total() const { return total(horizontal); }

    // R5 transitions grouped by the parent unit whose shade they place.
    [[nodiscard]] std::map<UnitKey, std::int64_t> r5_by_parent(const HierarchyConfig& c) const {
        std::map<UnitKey, std::int64_t> out;
        for (const auto& [key, count] : vertical_down) out[{key.first + 1, c.parent_of(key.first, key.second)}] += count;
        return out;
    }
};

class PrbwGame {
  public:
    PrbwGame(const Cdag& g, HierarchyConfig config) : g_(g), c_(std::move(config)) {
        c_.check();
        require_valid(g, Convention::rbw);
        pebbles_.resize(static_cast<std::size_t>(c_.L));
        for (int l = 1; l <= c_.L; ++l) pebbles_[static_cast<std::size_t>(l - 1)].resize(static_cast<std::size_t>(c_.units(l)));
        blue_.assign(g.size(), false);
        white_.assign(g.size(), false);
        for (std::size_t v = 0; v < g.size(); ++v) blue_[v] = g.is_input(static_cast<VertexId>(v));
    }

    void apply(const PrbwMove& mv) {
        ++step_;
        const VertexId v = mv.vertex;
        const char* rule = rule_name(mv.kind);
        if (!g_.contains(v)) fail(rule, v, "unknown vertex");
        const auto i = static_cast<std::size_t>(v);
        const int L = c_.L;
        switch (mv.kind) {
            case PrbwMove::Kind::Input:
                unit_in_range(rule, v, L, mv.unit);
                if (!blue_[i]) fail(rule, v, "vertex has no blue pebble");
                place(rule, v, L, mv.unit);
                white_[i] = true;
                ++tally_.loads[mv.unit];
                break;
            case PrbwMove::Kind::Output:
                unit_in_range(rule, v, L, mv.unit);
                if (!has(v, L, mv.unit)) fail(rule, v, "no level-L pebble of unit " + std::to_string(mv.unit));
                blue_[i] = true;
                ++tally_.stores[mv.unit];
                break;
            case PrbwMove::Kind::RemoteGet: {
                if (!mv.src_unit) fail(rule, v, "remote get needs a source unit");
                unit_in_range(rule, v, L, *mv.src_unit);
                unit_in_range(rule, v, L, mv.unit);
                if (*mv.src_unit == mv.unit) fail(rule, v, "remote get needs two distinct level-L units");
                if (!has(v, L, *mv.src_unit))
                    fail(rule, v, "source unit " + std::to_string(*mv.src_unit) + " holds no pebble on the vertex");
                place(rule, v, L, mv.unit);
                ++tally_.horizontal[mv.unit];
                break;
            }
            case PrbwMove::Kind::MoveUp: {
                if (mv.level < 1 || mv.level >= L) fail(rule, v, "R4 places a pebble at a level 1..L-1");
                unit_in_range(rule, v, mv.level, mv.unit);
                const auto par = c_.parent_of(mv.level, mv.unit);
                if (mv.src_unit && *mv.src_unit != par)
                    fail(rule, v, "unit " + std::to_string(*mv.src_unit) + " is not the parent of level-" +
                                      std::to_string(mv.level) + " unit " + std::to_string(mv.unit));
                if (!has(v, mv.level + 1, par))
                    fail(rule, v, "parent unit " + std::to_string(par) + " at level " + std::to_string(mv.level + 1) +
                                      " holds no pebble on the vertex");
                place(rule, v, mv.level, mv.unit);
                ++tally_.vertical_up[{mv.level, mv.unit}];
                break;
            }
            case PrbwMove::Kind::MoveDown: {
                if (mv.level <= 1 || mv.level > L) fail(rule, v, "R5 places a pebble at a level 2..L");
                unit_in_range(rule, v, mv.level, mv.unit);
                const int child_level = mv.level - 1;
                std::optional<std::int64_t> child;
                if (mv.src_unit) {
                    unit_in_range(rule, v, child_level, *mv.src_unit);
                    if (c_.parent_of(child_level, *mv.src_unit) != mv.unit)
                        fail(rule, v, "unit " + std::to_string(*mv.src_unit) + " is not a child of level-" +
                                          std::to_string(mv.level) + " unit " + std::to_string(mv.unit));
                    if (!has(v, child_level, *mv.src_unit))
                        fail(rule, v, "child unit " + std::to_string(*mv.src_unit) + " holds no pebble on the vertex");
                    child = mv.src_unit;
                } else {
                    for (std::int64_t u = 0; u < c_.units(child_level) && !child; ++u)
                        if (c_.parent_of(child_level, u) == mv.unit && has(v, child_level, u)) child = u;
                    if (!child) fail(rule, v, "no child unit holds a pebble on the vertex");
                }
                place(rule, v, mv.level, mv.unit);
                ++tally_.vertical_down[{child_level, *child}];
                break;
            }
            case PrbwMove::Kind::Compute: {
                unit_in_range(rule, v, 1, mv.unit);
                if (g_.is_input(v)) fail(rule, v, "input vertices cannot be computed");
                if (white_[i]) fail(rule, v, "recomputation forbidden");
                for (VertexId p : g_.preds(v))
                    if (!has(p, 1, mv.unit))
                        fail(rule, v, "predecessor " + std::to_string(p) + " has no level-1 pebble of processor " +
                                          std::to_string(mv.unit));
                place(rule, v, 1, mv.unit);
                white_[i] = true;
                ++tally_.computes[mv.unit];
                break;
            }
            case PrbwMove::Kind::Delete:
                if (mv.level < 1 || mv.level > L) fail(rule, v, "level out of range");
                unit_in_range(rule, v, mv.level, mv.unit);
                if (!has(v, mv.level, mv.unit)) fail(rule, v, "no pebble of that shade on the vertex");
                set_of(mv.level, mv.unit).erase(v);
                ++tally_.deletes;
                break;
        }
    }

    PrbwTally finish() const {
        for (std::size_t i = 0; i < g_.size(); ++i)
            if (!white_[i])
                throw GameError(0, "completion", static_cast<VertexId>(i),
                                "vertex " + std::to_string(i) + " never white-pebbled");
        for (std::size_t i = 0; i < g_.size(); ++i)
            if (g_.is_output(static_cast<VertexId>(i)) && !blue_[i])
                throw GameError(0, "completion", static_cast<VertexId>(i),
                                "outputs not blue-pebbled (vertex " + std::to_string(i) + ")");
        return tally_;
    }

    [[nodiscard]] const PrbwTally& tally() const { return tally_; }

    // Pebbles charged to a unit: its own shade, plus (inclusive) every shade below it.
    [[nodiscard]] std::int64_t occupancy(int level, std::int64_t unit) const {
        if (c_.policy == CachePolicy::exclusive) return static_cast<std::int64_t>(set_of(level, unit).size());
        std::set<VertexId> all;
        collect(level, unit, all);
        return static_cast<std::int64_t>(all.size());
    }

  private:
    [[noreturn]] void fail(const char* rule, VertexId v, const std::string& what) const {
        throw GameError(step_, rule, v, what);
    }

    void unit_in_range(const char* rule, VertexId v, int level, std::int64_t unit) const {
        if (level < 1 || level > c_.L || unit < 0 || unit >= c_.units(level))
            fail(rule, v, "level " + std::to_string(level) + " unit " + std::to_string(unit) + " out of range");
    }

    [[nodiscard]] const std::set<VertexId>& set_of(int level, std::int64_t unit) const {
        return pebbles_[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(unit)];
    }
    std::set<VertexId>& set_of(int level, std::int64_t unit) {
        return pebbles_[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(unit)];
    }
    [[nodiscard]] bool has(VertexId v, int level, std::int64_t unit) const { return set_of(level, unit).count(v) > 0; }

    void collect(int level, std::int64_t unit, std::set<VertexId>& out) const {
        const auto& own = set_of(level, unit);
        out.insert(own.begin(), own.end());
        if (level == 1) return;
        for (std::int64_t c = 0; c < c_.units(level - 1); ++c)
            if (c_.parent_of(level - 1, c) == unit) collect(level - 1, c, out);
    }

    void place(const char* rule, VertexId v, int level, std::int64_t unit) {
        set_of(level, unit).insert(v);
        // Capacity of the unit itself and, when inclusive, of every ancestor.
        int l = level;
        std::int64_t u = unit;
        while (true) {
            const auto occ = occupancy(l, u);
            if (occ > c_.capacity(l))
                fail(rule, v, "capacity exceeded at level " + std::to_string(l) + " unit " + std::to_string(u) + " (" +
                                  std::to_string(occ) + " > " + std::to_string(c_.capacity(l)) + ")");
            if (c_.policy == CachePolicy::exclusive || l == c_.L) break;
            u = c_.parent_of(l, u);
            ++l;
        }
    }

    const Cdag& g_;
    HierarchyConfig c_;
    std::vector<std::vector<std::set<VertexId>>> pebbles_;
    std::vector<bool> blue_, white_;
    std::size_t step_ = 0;
    PrbwTally tally_;
};

inline PrbwTally validate_prbw(const Cdag& g, const HierarchyConfig& config, const std::vector<PrbwMove>& trace) {
    PrbwGame sim(g, config);
    for (const auto& mv : trace) sim.apply(mv);
    return sim.finish();
}

// Sequential move -> P-RBW move on the one-level, one-processor hierarchy.
inline PrbwMove to_prbw(const RbwMove& mv) {
    PrbwMove out;
    out.vertex = mv.vertex;
    switch (mv.kind) {
        case RbwMove::Kind::Input: out.kind = PrbwMove::Kind::Input; break;
        case RbwMove::Kind::Output: out.kind = PrbwMove::Kind::Output; break;
        case RbwMove::Kind::Compute: out.kind = PrbwMove::Kind::Compute; break;
        case RbwMove::Kind::Delete:
            out.kind = PrbwMove::Kind::Delete;
            out.level = 1;
            break;
    }
    return out;
}

inline std::vector<PrbwMove> to_prbw(const std::vector<RbwMove>& trace) {
    std::vector<PrbwMove> out;
    out.reserve(trace.size());
    for (const auto& mv : trace) out.push_back(to_prbw(mv));
    return out;
}

// ---------------------------------------------------------------------------
// Text formats

inline void write_prbw_trace(std::ostream& os, const std::vector<PrbwMove>& trace) {
    os << "trace prbw 1\n";
    for (const auto& mv : trace) {
        os << rule_name(mv.kind) << ' ' << mv.vertex;
        switch (mv.kind) {
            case PrbwMove::Kind::Input:
            case PrbwMove::Kind::Output:
            case PrbwMove::Kind::Compute: os << ' ' << mv.unit; break;
            case PrbwMove::Kind::RemoteGet: os << ' ' << mv.src_unit.value_or(-1) << ' ' << mv.unit; break;
            case PrbwMove::Kind::MoveUp:
            case PrbwMove::Kind::Delete: os << ' ' << mv.level << ' ' << mv.unit; break;
            case PrbwMove::Kind::MoveDown:
                os << ' ' << mv.level << ' ' << mv.unit;
                if (mv.src_unit) os << ' ' << *mv.src_unit;
                break;
        }
        os << '\n';
    }
}

// "R1 v unit", "R2 v unit", "R3 v src dst", "R4 v level unit",
// "R5 v level unit [child]", "R6 v proc", "R7 v level unit".
inline std::vector<PrbwMove> read_prbw_trace(std::istream& is) {
    std::vector<PrbwMove> out;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line)) continue;
        auto tok = detail::split_ws(line);
        if (!header) {
            if (tok.size() != 3 || tok[0] != "trace" || tok[1] != "prbw" || tok[2] != "1")
                throw ParseError("expected header 'trace prbw 1'", lineno);
            header = true;
            continue;
        }
        auto num = [&](std::size_t k) { return detail::parse_int_token(tok[k], lineno); };
        auto arity = [&](std::size_t lo, std::size_t hi) {
            if (tok.size() < lo || tok.size() > hi) throw ParseError("wrong number of fields for " + tok[0], lineno);
        };
        PrbwMove mv;
        if (tok.size() < 2) throw ParseError("move needs a vertex", lineno);
        mv.vertex = detail::parse_vertex_token(tok[1], lineno);
        const auto& r = tok[0];
        if (r == "R1" || r == "R2" || r == "R6") {
            arity(3, 3);
            mv.kind = r == "R1" ? PrbwMove::Kind::Input : r == "R2" ? PrbwMove::Kind::Output : PrbwMove::Kind::Compute;
            mv.unit = num(2);
        } else if (r == "R3") {
            arity(4, 4);
            mv.kind = PrbwMove::Kind::RemoteGet;
            mv.src_unit = num(2);
            mv.unit = num(3);
        } else if (r == "R4" || r == "R7") {
            arity(4, 4);
            mv.kind = r == "R4" ? PrbwMove::Kind::MoveUp : PrbwMove::Kind::Delete;
            mv.level = static_cast<int>(num(2));
            mv.unit = num(3);
        } else if (r == "R5") {
            arity(4, 5);
            mv.kind = PrbwMove::Kind::MoveDown;
            mv.level = static_cast<int>(num(2));
            mv.unit = num(3);
            if (tok.size() == 5) mv.src_unit = num(4);
        } else {
            throw ParseError("unknown rule '" + r + "'", lineno);
        }
        out.push_back(mv);
    }
    if (!header) throw ParseError("missing header 'trace prbw 1'", lineno);
    return out;
}

inline std::vector<PrbwMove> prbw_trace_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_prbw_trace(is);
}

// hier 1 / levels <L> / level <l> units <N_l> cap <S_l> / parent <l> <unit> <parent-unit>
// / procs <P> / policy inclusive|exclusive
inline HierarchyConfig read_hierarchy(std::istream& is) {
    HierarchyConfig c;
    c.N.clear();
    c.S.clear();
    std::string line;
    std::size_t lineno = 0;
    bool header = false, have_levels = false, have_procs = false;
    std::vector<bool> level_seen;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line)) continue;
        auto tok = detail::split_ws(line);
        auto num = [&](std::size_t k) { return detail::parse_int_token(tok[k], lineno); };
        if (!header) {
            if (tok.size() != 2 || tok[0] != "hier" || tok[1] != "1") throw ParseError("expected header 'hier 1'", lineno);
            header = true;
            continue;
        }
        if (tok[0] == "levels" && tok.size() == 2) {
            if (have_levels) throw ParseError("duplicate 'levels'", lineno);
            c.L = static_cast<int>(num(1));
            if (c.L < 1 || c.L > 64) throw ParseError("levels must be in 1..64", lineno);
            c.N.assign(static_cast<std::size_t>(c.L), 0);
            c.S.assign(static_cast<std::size_t>(c.L), 0);
            level_seen.assign(static_cast<std::size_t>(c.L), false);
            c.parent.assign(static_cast<std::size_t>(c.L - 1), {});
            have_levels = true;
        } else if (tok[0] == "level" && tok.size() == 6 && tok[2] == "units" && tok[4] == "cap") {
            if (!have_levels) throw ParseError("'levels' must come before 'level'", lineno);
            const auto l = num(1);
            if (l < 1 || l > c.L) throw ParseError("level out of range", lineno);
            const auto idx = static_cast<std::size_t>(l - 1);
            if (level_seen[idx]) throw ParseError("duplicate level " + tok[1], lineno);
            level_seen[idx] = true;
            c.N[idx] = num(3);
            c.S[idx] = num(5);
            if (c.N[idx] < 1 || c.N[idx] > 1'000'000) throw ParseError("unit count out of range", lineno);
            if (idx + 1 < static_cast<std::size_t>(c.L)) c.parent[idx].assign(static_cast<std::size_t>(c.N[idx]), -1);
        } else if (tok[0] == "parent" && tok.size() == 4) {
            const auto l = num(1);
            if (!have_levels || l < 1 || l >= c.L) throw ParseError("parent level out of range", lineno);
            auto& pm = c.parent[static_cast<std::size_t>(l - 1)];
            const auto u = num(2);
            if (u < 0 || static_cast<std::size_t>(u) >= pm.size()) throw ParseError("parent unit out of range", lineno);
            if (pm[static_cast<std::size_t>(u)] != -1) throw ParseError("unit has more than one parent", lineno);
            pm[static_cast<std::size_t>(u)] = num(3);
        } else if (tok[0] == "procs" && tok.size() == 2) {
            c.P = num(1);
            have_procs = true;
        } else if (tok[0] == "policy" && tok.size() == 2) {
            if (tok[1] == "inclusive") c.policy = CachePolicy::inclusive;
            else if (tok[1] == "exclusive") c.policy = CachePolicy::exclusive;
            else throw ParseError("policy must be inclusive or exclusive", lineno);
        } else {
            throw ParseError("unknown record '" + tok[0] + "'", lineno);
        }
    }
    if (!header) throw ParseError("missing header 'hier 1'", lineno);
    if (!have_levels) throw ParseError("missing 'levels'", lineno);
    for (std::size_t l = 0; l < level_seen.size(); ++l)
        if (!level_seen[l]) throw ParseError("missing 'level " + std::to_string(l + 1) + "'", lineno);
    if (!have_procs) c.P = c.N.front();
    for (std::size_t l = 0; l < c.parent.size(); ++l)
        for (std::size_t u = 0; u < c.parent[l].size(); ++u)
            if (c.parent[l][u] < 0)
                throw ParseError("level " + std::to_string(l + 1) + " unit " + std::to_string(u) + " has no parent", lineno);
    c.check();
    return c;
}

inline HierarchyConfig hierarchy_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_hierarchy(is);
}

inline void write_hierarchy(std::ostream& os, const HierarchyConfig& c) {
    os << "hier 1\nlevels " << c.L << '\n';
    for (int l = 1; l <= c.L; ++l) os << "level " << l << " units " << c.units(l) << " cap " << c.capacity(l) << '\n';
    for (int l = 1; l < c.L; ++l)
        for (std::int64_t u = 0; u < c.units(l); ++u) os << "parent " << l << ' ' << u << ' ' << c.parent_of(l, u) << '\n';
    os << "procs " << c.P << '\n';
    os << "policy " << (c.policy == CachePolicy::inclusive ? "inclusive" : "exclusive") << '\n';
}

}  // namespace iolb
