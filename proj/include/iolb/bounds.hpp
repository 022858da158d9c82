#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iolb/bound_report.hpp"
#include "iolb/cdag.hpp"
#include "iolb/error.hpp"
#include "iolb/generators.hpp"
#include "iolb/rational.hpp"
#include "iolb/wavefront.hpp"

namespace iolb {

enum class PartitionKind { disjoint, non_disjoint };

struct Partition {
    std::vector<std::string> names;
    std::vector<VertexSet> blocks;
    PartitionKind mode = PartitionKind::disjoint;
};

// Problems with the partition over the whole vertex set, empty when valid.
inline std::vector<std::string> check_partition(const Cdag& g, const Partition& p) {
    std::vector<std::string> problems;
    std::vector<int> seen(g.size(), 0);
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
        for (VertexId v : p.blocks[b]) {
            if (!g.contains(v)) {
                problems.push_back("block " + std::to_string(b) + ": unknown vertex " + std::to_string(v));
                continue;
            }
            ++seen[static_cast<std::size_t>(v)];
        }
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (seen[v] == 0) problems.push_back("vertex " + std::to_string(v) + " not covered");
        if (seen[v] > 1 && p.mode == PartitionKind::disjoint)
            problems.push_back("vertex " + std::to_string(v) + " in more than one block");
    }
    return problems;
}

namespace detail {

inline std::optional<std::int64_t> exact_root(std::int64_t v, int d) {
    if (v < 0 || d < 1) return std::nullopt;
    auto r = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(v), 1.0 / d)));
    for (std::int64_t c = std::max<std::int64_t>(0, r - 1); c <= r + 1; ++c) {
        std::int64_t p = 1;
        bool over = false;
        for (int i = 0; i < d && !over; ++i) {
            if (c != 0 && p > v / c) over = true;
            else p *= c;
        }
        if (!over && p == v) return c;
    }
    return std::nullopt;
}

inline BoundValue value_pow(const BoundValue& b, int e) {
    if (b.exact) return BoundValue(pow(*b.exact, e));
    return BoundValue::real(std::pow(b.approx, e));
}

inline BoundValue value_mul(const BoundValue& a, const BoundValue& b) {
    if (a.exact && b.exact) return BoundValue(*a.exact * *b.exact);
    return BoundValue::real(a.approx * b.approx);
}

inline std::string str(std::int64_t v) { return std::to_string(v); }

}  // namespace detail

// Outputs that are not also inputs. An input-output vertex costs one load and
// no store, so deletion charges it once.
inline std::int64_t outputs_not_inputs(const Cdag& g) {
    std::int64_t k = 0;
    for (std::size_t v = 0; v < g.size(); ++v)
        k += g.is_output(static_cast<VertexId>(v)) && !g.is_input(static_cast<VertexId>(v));
    return k;
}

// 2 * (wmax - S), clamped at 0, for a CDAG without inputs.
inline BoundReport mincut_lower_bound(const Cdag& g, std::int64_t S,
                                      const std::optional<std::vector<VertexId>>& candidates = std::nullopt) {
    if (g.input_count() != 0) throw Error("min-cut bound requires an input-free CDAG; delete or untag first");
    if (S < 1) throw Error("S must be >= 1");
    const auto w = wmax(g, candidates);
    BoundReport r;
    r.kind = BoundKind::lower;
    r.method = Method::mincut;
    r.value = BoundValue(std::max<std::int64_t>(0, 2 * (w - S)));
    r.symbolic = "2*(wmax - S)";
    r.param("S", S).param("wmax", w);
    if (candidates) r.param("candidates", static_cast<std::int64_t>(candidates->size()));
    return r;
}

// Divide and conquer: every block loses its own input/output vertices, the
// rest is bounded by its largest minimum wavefront, and |I| + |O| is added
// once. In non-disjoint mode a block holds one extra red pebble for each of
// its vertices that reappears in a later block, so every shared vertex is
// charged only where it appears last.
inline BoundReport mincut_divide_bound(const Cdag& g, const Partition& part, std::int64_t S,
                                       const std::vector<VertexId>& anchors = {}) {
    if (S < 1) throw Error("S must be >= 1");
    if (part.blocks.empty()) throw Error("partition has no blocks");
    if (auto problems = check_partition(g, part); !problems.empty()) throw Error("invalid partition: " + problems.front());

    BoundReport r;
    r.kind = BoundKind::lower;
    r.method = Method::mincut;
    std::int64_t total = 0;
    std::vector<int> last(g.size(), -1);
    for (std::size_t b = 0; b < part.blocks.size(); ++b)
        for (VertexId v : part.blocks[b]) last[static_cast<std::size_t>(v)] = static_cast<int>(b);

    for (std::size_t b = 0; b < part.blocks.size(); ++b) {
        VertexSet inner;
        std::int64_t pinned = 0;
        for (VertexId v : part.blocks[b]) {
            if (g.is_input(v) || g.is_output(v)) continue;
            inner.insert(v);
            if (last[static_cast<std::size_t>(v)] != static_cast<int>(b)) ++pinned;
        }
        const std::int64_t Sb = S + pinned;
        std::int64_t w = 0;
        if (!inner.empty()) {
            const auto sub = induced_subcdag(g, inner);
            std::vector<VertexId> local;
            for (VertexId a : anchors)
                if (const VertexId l = sub.local_of(a); l >= 0) local.push_back(l);
            w = local.empty() ? wmax(sub.cdag) : wmax(sub.cdag, local);
        }
        const std::int64_t term = std::max<std::int64_t>(0, 2 * (w - Sb));
        total += term;
        const std::string name = b < part.names.size() ? part.names[b] : "block" + std::to_string(b);
        r.param("wmax[" + name + "]", w);
        if (pinned > 0) r.param("S[" + name + "]", Sb);
        r.provenance.push_back("min-cut on " + name + " (I/O deleted): max(0, 2*(" + detail::str(w) + " - " +
                               detail::str(Sb) + ")) = " + detail::str(term));
    }
    const auto dO = outputs_not_inputs(g);
    const auto io = static_cast<std::int64_t>(g.input_count()) + dO;
    r.value = BoundValue(total + io);
    r.symbolic = "sum_i 2*(wmax_i - S_i) + |I| + |O - I|";
    r.provenance.push_back("deletion: +|I|+|O| (|I|=" + detail::str(static_cast<std::int64_t>(g.input_count())) +
                           ", |O-I|=" + detail::str(dO) + ")");
    r.provenance.push_back("decomposition: sum over " + detail::str(static_cast<std::int64_t>(part.blocks.size())) +
                           " blocks");
    r.param("S", S).param("blocks", static_cast<std::int64_t>(part.blocks.size()));
    r.param("mode", part.mode == PartitionKind::disjoint ? "disjoint" : "non-disjoint");
    return r;
}

// A level-l unit moves at least IO_1(C, S_{l-1} * N_{l-1}) / N_l words: some
// unit carries at least the average.
inline BoundReport vertical_bound_from_sequential(const BoundReport& seq_lb, std::int64_t N_l) {
    if (!seq_lb.is_lower()) throw Error("vertical bound needs a sequential lower bound");
    if (N_l < 1) throw Error("N_l must be >= 1");
    BoundReport r = seq_lb;
    r.kind = BoundKind::lower;
    r.value = (seq_lb.value / Rational(N_l)).floored().clamped();
    r.symbolic = seq_lb.symbolic.empty() ? "floor(IO_1 / N_l)" : "floor((" + seq_lb.symbolic + ") / N_l)";
    if (seq_lb.asymptotic) r.asymptotic = *seq_lb.asymptotic / Rational(N_l);
    if (!seq_lb.asymptotic_symbolic.empty()) r.asymptotic_symbolic = "(" + seq_lb.asymptotic_symbolic + ") / N_l";
    r.param("N_l", N_l);
    r.provenance.push_back("vertical: busiest of N_l=" + detail::str(N_l) + " units carries at least the average");
    return r;
}

inline BoundReport vertical_bound_spart(std::int64_t V_size, std::int64_t umax_2S, std::int64_t N_l,
                                        std::int64_t N_lminus1, std::int64_t S_lminus1) {
    for (auto v : {V_size, umax_2S, N_l, N_lminus1, S_lminus1})
        if (v < 1) throw Error("vertical S-partition bound parameters must be >= 1");
    BoundReport r;
    r.kind = BoundKind::lower;
    r.method = Method::spart;
    const Rational val = (Rational(V_size) / Rational(umax_2S * N_l) - Rational(N_lminus1) / Rational(N_l)) *
                         Rational(S_lminus1);
    r.value = BoundValue(val).clamped();
    r.symbolic = "(|V|/(U*N_l) - N_{l-1}/N_l) * S_{l-1}";
    r.asymptotic = BoundValue(Rational(V_size * S_lminus1) / Rational(umax_2S * N_l));
    r.asymptotic_symbolic = "|V|*S_{l-1}/(U*N_l)";
    r.asymptotic_condition = "|V| >> U*N_{l-1}";
    r.param("|V|", V_size).param("U", umax_2S).param("N_l", N_l).param("N_{l-1}", N_lminus1).param("S_{l-1}", S_lminus1);
    return r;
}

// P_i is the number of processors sharing one level-L unit (P / N_L).
inline BoundReport horizontal_bound_spart(std::int64_t V_size, std::int64_t umax_2SL, std::int64_t S_L,
                                          std::int64_t P_i) {
    for (auto v : {V_size, umax_2SL, S_L, P_i})
        if (v < 1) throw Error("horizontal S-partition bound parameters must be >= 1");
    BoundReport r;
    r.kind = BoundKind::lower;
    r.method = Method::spart;
    const Rational val = (Rational(V_size) / Rational(umax_2SL * P_i) - Rational(1)) * Rational(S_L);
    r.value = BoundValue(val).clamped();
    r.symbolic = "(|V|/(U*P_i) - 1) * S_L";
    r.param("|V|", V_size).param("U", umax_2SL).param("S_L", S_L).param("P_i", P_i);
    r.notes.emplace_back("P_i = processors per level-L unit; attributed to the group with the most computes");
    return r;
}

// Closed-form lower bounds for the solver families (P processors, S words each).
inline BoundReport analytic_lb(const AlgorithmParams& p, std::int64_t P, std::int64_t S) {
    if (P < 1) throw Error("P must be >= 1");
    if (S < 1) throw Error("S must be >= 1");
    BoundReport r;
    r.kind = BoundKind::lower;
    r.method = Method::analytic;
    r.param("alg", to_string(p.algorithm)).param("P", P).param("S", S);
    const Rational Pr(P);
    switch (p.algorithm) {
        case Algorithm::cg:
        case Algorithm::gmres: {
            const bool cg = p.algorithm == Algorithm::cg;
            const std::int64_t nd = detail::ipow(p.n, p.d);
            const std::int64_t iters = cg ? p.T : p.m;
            const std::int64_t slack = cg ? 2 * S : S;  // the CG slab term subtracts 2S, GMRES only S
            r.value = BoundValue(Rational(iters * 2 * (3 * nd - slack)) / Pr).clamped();
            r.symbolic = cg ? "T*2*(3n^d - 2S)/P" : "m*2*(3n^d - S)/P";
            r.asymptotic = BoundValue(Rational(6 * nd * iters) / Pr);
            r.asymptotic_symbolic = cg ? "6n^dT/P" : "6n^dm/P";
            r.asymptotic_condition = "n >> S";
            r.param("n", p.n).param("d", p.d).param(cg ? "T" : "m", iters);
            r.provenance.emplace_back(cg ? "min-cut per iteration: wavefronts 2n^d at a, n^d at g"
                                         : "min-cut per iteration: wavefronts 2n^d at h_ii, n^d at the norm");
            r.provenance.emplace_back("vertical: divided over P processors");
            if (!cg) r.notes.emplace_back("slab term subtracts S, the CG form subtracts 2S");
            break;
        }
        case Algorithm::jacobi: {
            const std::int64_t nd = detail::ipow(p.n, p.d);
            if (auto root = detail::exact_root(2 * S, p.d)) {
                r.value = BoundValue(Rational(nd * p.T) / Rational(4 * P * *root));
            } else {
                r.value = BoundValue::real(static_cast<double>(nd) * static_cast<double>(p.T) /
                                           (4.0 * static_cast<double>(P) * std::pow(2.0 * static_cast<double>(S), 1.0 / p.d)));
            }
            r.symbolic = "n^dT/(4P(2S)^(1/d))";
            r.param("n", p.n).param("d", p.d).param("T", p.T);
            r.provenance.emplace_back("S-partition: U(C,2S) = 4S(2S)^(1/d)");
            break;
        }
        case Algorithm::matmul: {
            const std::int64_t N3 = p.n * p.n * p.n;
            if (auto root = detail::exact_root(2 * S, 2)) {
                r.value = BoundValue(Rational(N3) / Rational(2 * *root));
            } else {
                r.value = BoundValue::real(static_cast<double>(N3) / (2.0 * std::sqrt(2.0 * static_cast<double>(S))));
            }
            r.symbolic = "N^3/(2*sqrt(2S))";
            r.param("N", p.n);
            if (P != 1) r.notes.emplace_back("sequential form; P is not applied");
            break;
        }
        default:
            throw Error(std::string("no analytic lower bound for '") + to_string(p.algorithm) +
                        "' (cg, gmres, jacobi, matmul)");
    }
    return r;
}

// Ghost-cell upper bounds on inter-node traffic for a block-partitioned grid.
inline BoundReport analytic_horizontal_ub(const AlgorithmParams& p, std::int64_t N_nodes) {
    if (N_nodes < 1) throw Error("N_nodes must be >= 1");
    if (p.algorithm != Algorithm::cg && p.algorithm != Algorithm::gmres && p.algorithm != Algorithm::jacobi)
        throw Error(std::string("no horizontal upper bound for '") + to_string(p.algorithm) + "' (cg, gmres, jacobi)");
    BoundValue B;
    if (auto root = detail::exact_root(N_nodes, p.d)) {
        B = BoundValue(Rational(p.n) / Rational(*root));
    } else {
        B = BoundValue::real(static_cast<double>(p.n) / std::pow(static_cast<double>(N_nodes), 1.0 / p.d));
    }
    if (!B.ge(1)) throw Error("more nodes than grid blocks (B = n/N_nodes^(1/d) < 1)");

    BoundReport r;
    r.kind = BoundKind::upper;
    r.method = Method::analytic;
    const bool jac = p.algorithm == Algorithm::jacobi;
    const std::int64_t iters = p.algorithm == Algorithm::gmres ? p.m : p.T;
    const BoundValue it(iters);
    const BoundValue ghost = detail::value_pow(B + BoundValue(2), p.d) - detail::value_pow(B, p.d);
    const BoundValue face = detail::value_mul(BoundValue(2 * p.d), detail::value_pow(B, p.d - 1));
    const int points = p.stencil_points == 0 ? static_cast<int>(detail::ipow(3, p.d)) : p.stencil_points;
    if (jac && p.d == 2) {
        r.value = detail::value_mul(detail::value_mul(BoundValue(4), B), it);
        r.symbolic = "4BT";
    } else if (jac && points == 2 * p.d + 1) {
        r.value = detail::value_mul(face, it);
        r.symbolic = "2dB^(d-1)T";
    } else {
        r.value = detail::value_mul(ghost, it);
        r.symbolic = std::string("((B+2)^d - B^d)*") + (p.algorithm == Algorithm::gmres ? "m" : "T");
        r.asymptotic = detail::value_mul(face, it);
        r.asymptotic_symbolic = std::string("2dB^(d-1)*") + (p.algorithm == Algorithm::gmres ? "m" : "T");
        r.asymptotic_condition = "B >> 1";
    }
    r.param("alg", to_string(p.algorithm)).param("n", p.n).param("d", p.d).param("N_nodes", N_nodes);
    r.param("B", B.str());
    r.param(p.algorithm == Algorithm::gmres ? "m" : "T", iters);
    return r;
}

}  // namespace iolb
