#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "iolb/cdag.hpp"
#include "iolb/cdag_io.hpp"
#include "iolb/error.hpp"

namespace iolb {

enum class Game { rb, rbw };

inline const char* to_string(Game g) { return g == Game::rb ? "rb" : "rbw"; }

inline Game parse_game(const std::string& s) {
    if (s == "rb") return Game::rb;
    if (s == "rbw") return Game::rbw;
    throw Error("unknown game '" + s + "' (rb, rbw)");
}

// R1..R4 of the sequential games.
struct RbwMove {
    enum class Kind { Input, Output, Compute, Delete };
    Kind kind = Kind::Input;
    VertexId vertex = 0;

    friend bool operator==(const RbwMove&, const RbwMove&) = default;
};

inline const char* rule_name(RbwMove::Kind k) {
    switch (k) {
        case RbwMove::Kind::Input: return "R1";
        case RbwMove::Kind::Output: return "R2";
        case RbwMove::Kind::Compute: return "R3";
        case RbwMove::Kind::Delete: return "R4";
    }
    return "?";
}

inline RbwMove load(VertexId v) { return {RbwMove::Kind::Input, v}; }
inline RbwMove store(VertexId v) { return {RbwMove::Kind::Output, v}; }
inline RbwMove compute(VertexId v) { return {RbwMove::Kind::Compute, v}; }
inline RbwMove remove(VertexId v) { return {RbwMove::Kind::Delete, v}; }

struct IoTally {
    std::int64_t loads = 0;
    std::int64_t stores = 0;
    std::int64_t computes = 0;
    std::int64_t deletes = 0;

    [[nodiscard]] std::int64_t io() const { return loads + stores; }
    friend bool operator==(const IoTally&, const IoTally&) = default;
};

// Incremental simulator for the sequential games. Every prefix of a valid
// trace is accepted move by move; finish() checks the completion condition.
class SequentialGame {
  public:
    SequentialGame(const Cdag& g, std::int64_t S, Game game) : g_(g), S_(S), game_(game) {
        if (S < 1) throw Error("S must be >= 1");
        require_valid(g, game == Game::rb ? Convention::hk : Convention::rbw);
        red_.assign(g.size(), false);
        blue_.assign(g.size(), false);
        white_.assign(g.size(), false);
        for (std::size_t v = 0; v < g.size(); ++v) blue_[v] = g.is_input(static_cast<VertexId>(v));
    }

    void apply(const RbwMove& mv) {
        ++step_;
        const VertexId v = mv.vertex;
        const char* rule = rule_name(mv.kind);
        if (!g_.contains(v)) fail(rule, v, "unknown vertex");
        const auto i = static_cast<std::size_t>(v);
        switch (mv.kind) {
            case RbwMove::Kind::Input:
                if (!blue_[i]) fail(rule, v, "vertex has no blue pebble");
                place_red(rule, v);
                if (game_ == Game::rbw) white_[i] = true;
                ++tally_.loads;
                break;
            case RbwMove::Kind::Output:
                if (!red_[i]) fail(rule, v, "vertex has no red pebble");
                blue_[i] = true;
                ++tally_.stores;
                break;
            case RbwMove::Kind::Compute:
                if (g_.is_input(v)) fail(rule, v, "input vertices cannot be computed");
                if (game_ == Game::rbw && white_[i]) fail(rule, v, "recomputation forbidden");
                for (VertexId p : g_.preds(v))
                    if (!red_[static_cast<std::size_t>(p)])
                        fail(rule, v, "predecessor " + std::to_string(p) + " has no red pebble");
                place_red(rule, v);
                if (game_ == Game::rbw) white_[i] = true;
                ++tally_.computes;
                break;
            case RbwMove::Kind::Delete:
                if (!red_[i]) fail(rule, v, "vertex has no red pebble");
                red_[i] = false;
                --red_count_;
                ++tally_.deletes;
                break;
        }
    }

    // Throws GameError(step 0) when the game is not complete.
    IoTally finish() const {
        for (std::size_t i = 0; i < g_.size(); ++i) {
            const auto v = static_cast<VertexId>(i);
            if (game_ == Game::rbw && !white_[i])
                throw GameError(0, "completion", v, "vertex " + std::to_string(v) + " never white-pebbled");
        }
        for (std::size_t i = 0; i < g_.size(); ++i) {
            const auto v = static_cast<VertexId>(i);
            if (g_.is_output(v) && !blue_[i])
                throw GameError(0, "completion", v, "outputs not blue-pebbled (vertex " + std::to_string(v) + ")");
        }
        return tally_;
    }

    [[nodiscard]] const IoTally& tally() const { return tally_; }
    [[nodiscard]] std::int64_t red_count() const { return red_count_; }
    [[nodiscard]] bool red(VertexId v) const { return red_.at(static_cast<std::size_t>(v)); }
    [[nodiscard]] bool blue(VertexId v) const { return blue_.at(static_cast<std::size_t>(v)); }
    [[nodiscard]] bool white(VertexId v) const { return white_.at(static_cast<std::size_t>(v)); }
    [[nodiscard]] std::size_t step() const { return step_; }

  private:
    [[noreturn]] void fail(const char* rule, VertexId v, const std::string& what) const {
        throw GameError(step_, rule, v, what);
    }

    void place_red(const char* rule, VertexId v) {
        const auto i = static_cast<std::size_t>(v);
        if (red_[i]) return;
        if (red_count_ + 1 > S_) fail(rule, v, "more than S=" + std::to_string(S_) + " red pebbles");
        red_[i] = true;
        ++red_count_;
    }

    const Cdag& g_;
    std::int64_t S_;
    Game game_;
    std::vector<bool> red_, blue_, white_;
    std::int64_t red_count_ = 0;
    std::size_t step_ = 0;
    IoTally tally_;
};

// Hong-Kung red-blue game: recomputation allowed, no white pebbles.
inline IoTally validate_rb(const Cdag& g, std::int64_t S, const std::vector<RbwMove>& trace) {
    SequentialGame sim(g, S, Game::rb);
    for (const auto& mv : trace) sim.apply(mv);
    return sim.finish();
}

// Red-blue-white game: each vertex fires at most once; completion needs
// white on every vertex and blue on every output.
inline IoTally validate_rbw(const Cdag& g, std::int64_t S, const std::vector<RbwMove>& trace) {
    SequentialGame sim(g, S, Game::rbw);
    for (const auto& mv : trace) sim.apply(mv);
    return sim.finish();
}

inline IoTally validate_game(const Cdag& g, std::int64_t S, Game game, const std::vector<RbwMove>& trace) {
    return game == Game::rb ? validate_rb(g, S, trace) : validate_rbw(g, S, trace);
}

// ---------------------------------------------------------------------------
// Trace text format: header "trace rbw 1", then "R<k> <v>" per line.

inline void write_trace(std::ostream& os, const std::vector<RbwMove>& trace) {
    os << "trace rbw 1\n";
    for (const auto& mv : trace) os << rule_name(mv.kind) << ' ' << mv.vertex << '\n';
}

inline std::string trace_to_text(const std::vector<RbwMove>& trace) {
    std::ostringstream os;
    write_trace(os, trace);
    return os.str();
}

inline std::vector<RbwMove> read_trace(std::istream& is) {
    std::vector<RbwMove> out;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line)) continue;
        auto tok = detail::split_ws(line);
        if (!header) {
            if (tok.size() != 3 || tok[0] != "trace" || (tok[1] != "rbw" && tok[1] != "rb") || tok[2] != "1")
                throw ParseError("expected header 'trace rbw 1'", lineno);
            header = true;
            continue;
        }
        if (tok.size() != 2) throw ParseError("move must be 'R<k> <vertex>'", lineno);
        RbwMove mv;
        if (tok[0] == "R1") mv.kind = RbwMove::Kind::Input;
        else if (tok[0] == "R2") mv.kind = RbwMove::Kind::Output;
        else if (tok[0] == "R3") mv.kind = RbwMove::Kind::Compute;
        else if (tok[0] == "R4") mv.kind = RbwMove::Kind::Delete;
        else throw ParseError("unknown rule '" + tok[0] + "'", lineno);
        mv.vertex = detail::parse_vertex_token(tok[1], lineno);
        out.push_back(mv);
    }
    if (!header) throw ParseError("missing header 'trace rbw 1'", lineno);
    return out;
}

inline std::vector<RbwMove> trace_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_trace(is);
}

}  // namespace iolb
