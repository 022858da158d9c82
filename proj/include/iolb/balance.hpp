#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iolb/bound_report.hpp"
#include "iolb/bounds.hpp"
#include "iolb/error.hpp"
#include "iolb/generators.hpp"
#include "iolb/machine.hpp"
#include "iolb/rational.hpp"

namespace iolb {

enum class Verdict { provably_bandwidth_bound, not_bandwidth_bound_achievable, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::provably_bandwidth_bound: return "provably-bandwidth-bound";
        case Verdict::not_bandwidth_bound_achievable: return "not-bandwidth-bound-achievable";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct BalanceVerdict {
    std::string level;
    BoundValue intensity;  // words/FLOP
    Rational machine_balance;
    Verdict verdict = Verdict::inconclusive;
    BoundValue bound;  // echoed inputs
    BoundValue V_size;
    std::int64_t N_nodes = 0;
};

namespace detail {

// Sign of (a - b) with a possibly inexact.
inline int compare(const BoundValue& a, const Rational& b) {
    if (a.exact) return *a.exact < b ? -1 : (*a.exact > b ? 1 : 0);
    const double d = b.to_double();
    return a.approx < d ? -1 : (a.approx > d ? 1 : 0);
}

inline BoundValue intensity(const BoundValue& bound, const BoundValue& V_size, std::int64_t N) {
    if (V_size.exact ? *V_size.exact <= Rational(0) : V_size.approx <= 0) throw Error("|V| must be > 0");
    if (N < 1) throw Error("N_nodes must be >= 1");
    const BoundValue scaled = value_mul(bound, BoundValue(N));
    if (scaled.exact && V_size.exact) return BoundValue(*scaled.exact / *V_size.exact);
    return BoundValue::real(scaled.approx / V_size.approx);
}

}  // namespace detail

// Trichotomy from one lower-bound and one upper-bound intensity.
inline Verdict classify(const std::optional<BoundValue>& lb_intensity, const std::optional<BoundValue>& ub_intensity,
                        const Rational& balance) {
    if (lb_intensity && detail::compare(*lb_intensity, balance) > 0) return Verdict::provably_bandwidth_bound;
    if (ub_intensity && detail::compare(*ub_intensity, balance) < 0) return Verdict::not_bandwidth_bound_achievable;
    return Verdict::inconclusive;
}

inline BalanceVerdict check_vertical(const BoundReport& lb_vert, const BoundValue& V_size, std::int64_t N_nodes,
                                     const MachineSpec& machine, const std::string& level = "vertical") {
    if (!lb_vert.is_lower()) throw Error("vertical check needs a lower bound");
    BalanceVerdict v;
    v.level = level;
    v.intensity = detail::intensity(lb_vert.value, V_size, N_nodes);
    v.machine_balance = machine.vertical_balance;
    v.verdict = classify(v.intensity, std::nullopt, v.machine_balance);
    v.bound = lb_vert.value;
    v.V_size = V_size;
    v.N_nodes = N_nodes;
    return v;
}

inline BalanceVerdict check_horizontal(const BoundReport& ub_horiz, const BoundValue& V_size, std::int64_t N_nodes,
                                       const MachineSpec& machine) {
    if (!ub_horiz.is_upper()) throw Error("horizontal check needs an upper bound");
    BalanceVerdict v;
    v.level = "horizontal";
    v.intensity = detail::intensity(ub_horiz.value, V_size, N_nodes);
    v.machine_balance = machine.horizontal_balance;
    v.verdict = classify(std::nullopt, v.intensity, v.machine_balance);
    v.bound = ub_horiz.value;
    v.V_size = V_size;
    v.N_nodes = N_nodes;
    return v;
}

struct JacobiThreshold {
    // Largest d with 1/(4(2S)^(1/d)) <= balance; nullopt when every d qualifies.
    std::optional<double> exact;
    // The linearized reading 4*balance*log2(2S).
    double linearized = 0;
};

inline JacobiThreshold jacobi_dimension_threshold(std::int64_t S_level, const Rational& balance) {
    if (S_level < 1) throw Error("S must be >= 1");
    if (balance <= Rational(0)) throw Error("balance must be > 0");
    JacobiThreshold t;
    const double lg = std::log2(2.0 * static_cast<double>(S_level));
    const double b = balance.to_double();
    t.linearized = 4.0 * b * lg;
    if (balance < Rational(1, 4)) t.exact = lg / std::log2(1.0 / (4.0 * b));
    return t;
}

struct Analysis {
    AlgorithmParams params;
    std::string machine;
    std::string level;
    std::int64_t S = 0;  // capacity of the level, words
    BoundValue V_size;
    std::string V_model;
    BoundReport lb;  // per node
    BoundReport ub;  // per node
    BalanceVerdict vertical;
    BalanceVerdict horizontal;
    std::optional<BoundValue> vertical_exact_intensity;  // from the pre-asymptotic lower bound
    std::optional<BoundValue> horizontal_closed_intensity;
    std::string horizontal_closed_form;
    std::optional<BoundValue> vertical_closed_intensity;
    std::string vertical_closed_form;
    std::optional<JacobiThreshold> threshold;
    std::vector<std::string> notes;
};

// Per-node bounds and FLOP models for a full-machine run, checked against
// the machine balances. The cache level picks S (default: the first listed).
inline Analysis analyze(const AlgorithmParams& p, const MachineSpec& machine, const std::string& level = "") {
    Analysis a;
    a.params = p;
    a.machine = machine.name;
    const CacheLevel* cache = level.empty() ? (machine.caches.empty() ? nullptr : &machine.caches.front()) : machine.cache(level);
    if (!cache) throw Error(level.empty() ? "machine lists no cache level" : "machine has no cache level '" + level + "'");
    a.level = cache->name;
    a.S = cache->words;
    const std::int64_t N = machine.nodes;
    const Rational n3 = Rational(detail::ipow(p.n, p.d));

    switch (p.algorithm) {
        case Algorithm::cg:
            if (p.d != 3) throw Error("unsupported FLOP model for cg d=" + std::to_string(p.d) +
                                      "; supported: cg d=3 (20n^3T), gmres d=3 (20n^3m+n^3m^2), jacobi (points*n^d*T)");
            a.V_size = BoundValue(Rational(20) * n3 * Rational(p.T));
            a.V_model = "20n^3T";
            break;
        case Algorithm::gmres:
            if (p.d != 3) throw Error("unsupported FLOP model for gmres d=" + std::to_string(p.d) +
                                      "; supported: cg d=3 (20n^3T), gmres d=3 (20n^3m+n^3m^2), jacobi (points*n^d*T)");
            a.V_size = BoundValue(Rational(20) * n3 * Rational(p.m) + n3 * Rational(p.m * p.m));
            a.V_model = "20n^3m + n^3m^2";
            break;
        case Algorithm::jacobi: {
            const int points = p.stencil_points == 0 ? static_cast<int>(detail::ipow(3, p.d)) : p.stencil_points;
            a.V_size = BoundValue(Rational(points) * n3 * Rational(p.T));
            a.V_model = std::to_string(points) + "*n^d*T";
            break;
        }
        default:
            throw Error(std::string("unsupported algorithm '") + to_string(p.algorithm) + "' (cg, gmres, jacobi)");
    }

    // The level is shared by the cores of a node, so the node is the unit.
    a.lb = analytic_lb(p, N, a.S);
    a.lb.param("N_nodes", N);
    a.ub = analytic_horizontal_ub(p, N);

    BoundReport lb_used = a.lb;
    if (a.lb.asymptotic) {
        lb_used.value = *a.lb.asymptotic;
        a.vertical_exact_intensity = detail::intensity(a.lb.value, a.V_size, N);
        a.notes.emplace_back("vertical verdict uses the asymptotic lower bound " + a.lb.asymptotic_symbolic + " (" +
                             a.lb.asymptotic_condition + ")");
    }
    a.vertical = check_vertical(lb_used, a.V_size, N, machine, a.level);
    a.horizontal = check_horizontal(a.ub, a.V_size, N, machine);

    const double nn = static_cast<double>(p.n), cube = std::cbrt(static_cast<double>(N));
    if (p.algorithm == Algorithm::cg) {
        a.horizontal_closed_form = "6*N_nodes^(1/3)/(20n)";
        a.horizontal_closed_intensity = BoundValue::real(6.0 * cube / (20.0 * nn));
    } else if (p.algorithm == Algorithm::gmres) {
        a.horizontal_closed_form = "6*N_nodes^(1/3)/(nm)";
        a.horizontal_closed_intensity = BoundValue::real(6.0 * cube / (nn * static_cast<double>(p.m)));
        a.notes.emplace_back("the nm form drops the 20n^3m term of |V|; the checked intensity keeps it");
    } else {
        a.threshold = jacobi_dimension_threshold(a.S, machine.vertical_balance);
        a.vertical_closed_form = "1/(4(2S)^(1/d))";
        if (auto root = detail::exact_root(2 * a.S, p.d))
            a.vertical_closed_intensity = BoundValue(Rational(1, 4 * *root));
        else
            a.vertical_closed_intensity =
                BoundValue::real(1.0 / (4.0 * std::pow(2.0 * static_cast<double>(a.S), 1.0 / p.d)));
        a.notes.emplace_back("the 1/(4(2S)^(1/d)) form counts one operation per grid point update");
    }
    return a;
}

}  // namespace iolb
