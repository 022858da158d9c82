#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "iolb/cdag_io.hpp"
#include "iolb/generators.hpp"

namespace iolb {

// Sidecar grammar (one record per line, '#' comments):
//   slab <name> <id>...          frontier <slabA> <slabB> <id>...
//   anchor <id>...               subslab <name> <id>...
//   subfrontier <a> <b> <id>...  tail <id>...
// A partition file uses the same grammar; only slab records matter there.
struct Annotations {
    std::vector<Slab> slabs;
    std::vector<Frontier> frontiers;
    std::vector<VertexId> anchors;
    std::vector<Slab> subslabs;
    std::vector<Frontier> subfrontiers;
    VertexSet tail;
};

namespace detail {

inline void write_ids(std::ostream& os, const VertexSet& ids) {
    for (VertexId v : ids) os << ' ' << v;
}

inline void check_name(const std::string& name) {
    if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos)
        throw Error("slab name '" + name + "' must be a nonempty token without whitespace");
}

}  // namespace detail

inline void write_annotations(std::ostream& os, const AnnotatedCdag& a) {
    for (const auto& s : a.slabs) {
        detail::check_name(s.name);
        os << "slab " << s.name;
        detail::write_ids(os, s.vertices);
        os << '\n';
    }
    for (const auto& f : a.frontiers) {
        os << "frontier " << f.slab_a << ' ' << f.slab_b;
        detail::write_ids(os, f.vertices);
        os << '\n';
    }
    for (VertexId v : a.anchors) os << "anchor " << v << '\n';
    for (const auto& s : a.subslabs) {
        detail::check_name(s.name);
        os << "subslab " << s.name;
        detail::write_ids(os, s.vertices);
        os << '\n';
    }
    for (const auto& f : a.subfrontiers) {
        os << "subfrontier " << f.slab_a << ' ' << f.slab_b;
        detail::write_ids(os, f.vertices);
        os << '\n';
    }
    if (!a.tail.empty()) {
        os << "tail";
        detail::write_ids(os, a.tail);
        os << '\n';
    }
}

inline Annotations read_annotations(std::istream& is) {
    Annotations out;
    std::string line;
    std::size_t lineno = 0;
    auto ids_from = [&](const std::vector<std::string>& tok, std::size_t first) {
        VertexSet s;
        for (std::size_t k = first; k < tok.size(); ++k) s.insert(detail::parse_vertex_token(tok[k], lineno));
        return s;
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line)) continue;
        auto tok = detail::split_ws(line);
        const auto& kind = tok[0];
        if (kind == "slab" || kind == "subslab") {
            if (tok.size() < 2) throw ParseError(kind + " record needs a name", lineno);
            Slab s{tok[1], ids_from(tok, 2)};
            (kind == "slab" ? out.slabs : out.subslabs).push_back(std::move(s));
        } else if (kind == "frontier" || kind == "subfrontier") {
            if (tok.size() < 3) throw ParseError(kind + " record needs two slab names", lineno);
            Frontier f{tok[1], tok[2], ids_from(tok, 3)};
            (kind == "frontier" ? out.frontiers : out.subfrontiers).push_back(std::move(f));
        } else if (kind == "anchor") {
            if (tok.size() < 2) throw ParseError("anchor record needs a vertex id", lineno);
            for (VertexId v : ids_from(tok, 1)) out.anchors.push_back(v);
        } else if (kind == "tail") {
            auto s = ids_from(tok, 1);
            out.tail.insert(s.begin(), s.end());
        } else {
            throw ParseError("unknown record '" + kind + "'", lineno);
        }
    }
    return out;
}

inline Annotations annotations_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_annotations(is);
}

}  // namespace iolb
