#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "iolb/cdag.hpp"
#include "iolb/error.hpp"

namespace iolb {

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

inline bool is_blank_or_comment(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

inline std::int64_t parse_int_token(const std::string& tok, std::size_t line) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(tok, &used);
    } catch (const std::exception&) {
        throw ParseError("expected integer, got '" + tok + "'", line);
    }
    if (used != tok.size()) throw ParseError("expected integer, got '" + tok + "'", line);
    return v;
}

inline VertexId parse_vertex_token(const std::string& tok, std::size_t line) {
    auto v = parse_int_token(tok, line);
    if (v < 0 || v > INT32_MAX) throw ParseError("vertex id out of range: " + tok, line);
    return static_cast<VertexId>(v);
}

}  // namespace detail

inline void write_cdag(std::ostream& os, const Cdag& g) {
    os << "cdag 1\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto v = static_cast<VertexId>(i);
        os << "v " << v;
        if (g.is_input(v)) os << " in";
        if (g.is_output(v)) os << " out";
        const auto& l = g.label(v);
        if (!l.empty()) {
            if (l.find_first_of(" \t\r\n") != std::string::npos)
                throw Error("label of vertex " + std::to_string(v) + " contains whitespace");
            os << " label=" << l;
        }
        os << '\n';
    }
    for (auto [u, w] : g.edges()) os << "e " << u << ' ' << w << '\n';
}

inline std::string to_text(const Cdag& g) {
    std::ostringstream os;
    write_cdag(os, g);
    return os.str();
}

// Strict reader. Vertex ids must be declared densely in increasing order
// (0, 1, 2, ...) before any edge refers to them.
inline Cdag read_cdag(std::istream& is) {
    CdagBuilder b;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line)) continue;
        auto tok = detail::split_ws(line);
        if (!header) {
            if (tok.size() != 2 || tok[0] != "cdag" || tok[1] != "1")
                throw ParseError("expected header 'cdag 1'", lineno);
            header = true;
            continue;
        }
        if (tok[0] == "v") {
            if (tok.size() < 2) throw ParseError("vertex line needs an id", lineno);
            const VertexId id = detail::parse_vertex_token(tok[1], lineno);
            if (static_cast<std::size_t>(id) != b.size())
                throw ParseError("vertex ids must be declared densely in order; expected " +
                                     std::to_string(b.size()) + ", got " + tok[1],
                                 lineno);
            bool in = false, out = false;
            std::string label;
            for (std::size_t k = 2; k < tok.size(); ++k) {
                if (tok[k] == "in" && !in) {
                    in = true;
                } else if (tok[k] == "out" && !out) {
                    out = true;
                } else if (tok[k].rfind("label=", 0) == 0 && label.empty() && tok[k].size() > 6) {
                    label = tok[k].substr(6);
                } else {
                    throw ParseError("unknown token '" + tok[k] + "'", lineno);
                }
            }
            b.add_vertex(in, out, label);
        } else if (tok[0] == "e") {
            if (tok.size() != 3) throw ParseError("edge line must be 'e <src> <dst>'", lineno);
            const VertexId u = detail::parse_vertex_token(tok[1], lineno);
            const VertexId w = detail::parse_vertex_token(tok[2], lineno);
            if (static_cast<std::size_t>(u) >= b.size() || static_cast<std::size_t>(w) >= b.size())
                throw ParseError("edge refers to undeclared vertex", lineno);
            try {
                b.add_edge(u, w);
            } catch (const Error& e) {
                throw ParseError(e.what(), lineno);
            }
        } else {
            throw ParseError("unknown record '" + tok[0] + "'", lineno);
        }
    }
    if (!header) throw ParseError("missing header 'cdag 1'", lineno);
    return std::move(b).build();
}

inline Cdag cdag_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_cdag(is);
}

}  // namespace iolb
