#pragma once

#include <string>
#include <vector>

#include "iolb/bound_report.hpp"
#include "iolb/cdag.hpp"
#include "iolb/error.hpp"

namespace iolb {

// Split of C at an anchor x: C1 on V - Dx (x stays in C1), C2 on Dx.
// Composition: IO_S(C) >= IO_{S+1}(C1) + IO_S(C2).
struct NondisjointSplit {
    InducedCdag c1;
    InducedCdag c2;
    VertexId x = 0;
    // Side conditions the caller must accept; empty when all hold.
    std::vector<std::string> checklist;
};

inline NondisjointSplit nondisjoint_decompose(const Cdag& g, VertexId x, const VertexSet& Dx) {
    if (!g.contains(x)) throw Error("unknown vertex " + std::to_string(x));
    if (Dx.count(x)) throw Error("anchor x must not belong to Dx");
    for (VertexId v : Dx)
        if (!g.contains(v)) throw Error("unknown vertex " + std::to_string(v));
    NondisjointSplit out;
    out.x = x;
    VertexSet rest;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (!Dx.count(static_cast<VertexId>(v))) rest.insert(static_cast<VertexId>(v));
    out.c1 = induced_subcdag(g, rest);
    out.c2 = induced_subcdag(g, Dx);
    // Every edge from Dx back into C1 must end at x.
    for (VertexId v : Dx)
        for (VertexId w : g.succs(v))
            if (!Dx.count(w) && w != x)
                out.checklist.push_back("edge " + std::to_string(v) + "->" + std::to_string(w) +
                                        " leaves Dx without passing through x");
    return out;
}

// Lower bound for C from lower bounds on C1 (computed with S+1 pebbles) and C2 (S pebbles).
inline BoundReport compose_nondisjoint(const BoundReport& c1_with_S_plus_1, const BoundReport& c2_with_S) {
    if (!c1_with_S_plus_1.is_lower() || !c2_with_S.is_lower())
        throw Error("transfer rules defined for lower bounds only");
    BoundReport out;
    out.kind = BoundKind::lower;
    out.method = Method::transfer;
    out.value = c1_with_S_plus_1.value + c2_with_S.value;
    out.symbolic = "IO_{S+1}(C1) + IO_S(C2)";
    out.provenance = c1_with_S_plus_1.provenance;
    out.provenance.insert(out.provenance.end(), c2_with_S.provenance.begin(), c2_with_S.provenance.end());
    out.provenance.emplace_back("non-disjoint decomposition: C1 with one extra red pebble held on x");
    return out;
}

}  // namespace iolb
