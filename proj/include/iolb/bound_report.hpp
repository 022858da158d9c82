#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iolb/error.hpp"
#include "iolb/rational.hpp"

namespace iolb {

// Bound value: exact whenever the closed form is rational, otherwise only the
// floating approximation (e.g. terms with (2S)^{1/d}).
struct BoundValue {
    std::optional<Rational> exact;
    double approx = 0.0;

    BoundValue() : exact(Rational(0)) {}
    BoundValue(Rational r) : exact(r), approx(r.to_double()) {}  // NOLINT(google-explicit-constructor)
    BoundValue(std::int64_t v) : BoundValue(Rational(v)) {}      // NOLINT(google-explicit-constructor)
    static BoundValue real(double v) {
        BoundValue b;
        b.exact.reset();
        b.approx = v;
        return b;
    }

    [[nodiscard]] bool is_exact() const { return exact.has_value(); }

    [[nodiscard]] BoundValue clamped() const {
        if (exact) return *exact < Rational(0) ? BoundValue(0) : *this;
        return approx < 0 ? BoundValue(0) : *this;
    }

    [[nodiscard]] BoundValue floored() const {
        if (exact) return BoundValue(exact->floor());
        return BoundValue(static_cast<std::int64_t>(std::floor(approx)));
    }

    friend BoundValue operator+(const BoundValue& a, const BoundValue& b) {
        if (a.exact && b.exact) return BoundValue(*a.exact + *b.exact);
        return real(a.approx + b.approx);
    }
    friend BoundValue operator-(const BoundValue& a, const BoundValue& b) {
        if (a.exact && b.exact) return BoundValue(*a.exact - *b.exact);
        return real(a.approx - b.approx);
    }
    friend BoundValue operator/(const BoundValue& a, const Rational& d) {
        if (a.exact) return BoundValue(*a.exact / d);
        return real(a.approx / d.to_double());
    }

    // Comparisons against integer counts (I/O optima) use the exact value when present.
    [[nodiscard]] bool le(std::int64_t v) const { return exact ? *exact <= Rational(v) : approx <= static_cast<double>(v) + 1e-9; }
    [[nodiscard]] bool ge(std::int64_t v) const { return exact ? *exact >= Rational(v) : approx + 1e-9 >= static_cast<double>(v); }

    // "p/q" (exact) or the decimal approximation prefixed by "~".
    [[nodiscard]] std::string str() const { return exact ? exact->str() : "~" + decimal(); }

    [[nodiscard]] std::string decimal() const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", approx);
        return buf;
    }
};

enum class BoundKind { lower, upper, exact };
enum class Method { spart, mincut, analytic, bruteforce, heuristic_game, transfer };

inline const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::lower: return "lower";
        case BoundKind::upper: return "upper";
        case BoundKind::exact: return "exact";
    }
    return "?";
}

inline const char* to_string(Method m) {
    switch (m) {
        case Method::spart: return "spart";
        case Method::mincut: return "mincut";
        case Method::analytic: return "analytic";
        case Method::bruteforce: return "bruteforce";
        case Method::heuristic_game: return "heuristic-game";
        case Method::transfer: return "transfer";
    }
    return "?";
}

struct BoundReport {
    BoundKind kind = BoundKind::lower;
    Method method = Method::analytic;
    BoundValue value;
    std::string symbolic;  // closed form in named parameters, if any
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> provenance;
    std::vector<std::string> notes;

    // Asymptotic form reported next to the exact one (e.g. as n >> S).
    std::optional<BoundValue> asymptotic;
    std::string asymptotic_symbolic;
    std::string asymptotic_condition;

    [[nodiscard]] bool is_lower() const { return kind != BoundKind::upper; }
    [[nodiscard]] bool is_upper() const { return kind != BoundKind::lower; }

    BoundReport& param(std::string key, std::string val) {
        params.emplace_back(std::move(key), std::move(val));
        return *this;
    }
    BoundReport& param(std::string key, std::int64_t val) { return param(std::move(key), std::to_string(val)); }

    [[nodiscard]] std::string find_param(const std::string& key) const {
        for (const auto& [k, v] : params)
            if (k == key) return v;
        return {};
    }
};

enum class TransferRule { tagging, untagging, deletion };

inline const char* to_string(TransferRule r) {
    switch (r) {
        case TransferRule::tagging: return "tagging";
        case TransferRule::untagging: return "untagging";
        case TransferRule::deletion: return "deletion";
    }
    return "?";
}

// Moves a lower bound across a graph surgery:
//   tagging   (report is for the retagged C')  -> value - |dI| - |dO|, clamped at 0
//   untagging (report is for C, C' has more tags) -> value unchanged
//   deletion  (report is for C with dI/dO removed) -> value + |dI| + |dO|
inline BoundReport transfer_bound(const BoundReport& report, TransferRule rule, std::int64_t dI_size,
                                  std::int64_t dO_size) {
    if (!report.is_lower()) throw Error("transfer rules defined for lower bounds only");
    if (dI_size < 0 || dO_size < 0) throw Error("transfer deltas must be nonnegative");
    BoundReport out = report;
    out.kind = BoundKind::lower;
    out.method = Method::transfer;
    out.asymptotic.reset();
    out.asymptotic_symbolic.clear();
    out.asymptotic_condition.clear();
    const std::string deltas = "(|dI|=" + std::to_string(dI_size) + ", |dO|=" + std::to_string(dO_size) + ")";
    switch (rule) {
        case TransferRule::tagging:
            out.value = (report.value - BoundValue(dI_size + dO_size)).clamped();
            out.provenance.push_back("tagging: -|dI|-|dO| " + deltas);
            break;
        case TransferRule::untagging:
            out.provenance.push_back("untagging: +0 " + deltas);
            break;
        case TransferRule::deletion:
            out.value = report.value + BoundValue(dI_size + dO_size);
            out.provenance.push_back("deletion: +|dI|+|dO| " + deltas);
            break;
    }
    if (!out.symbolic.empty()) {
        if (rule == TransferRule::tagging) out.symbolic = "max(0, " + out.symbolic + " - |dI| - |dO|)";
        if (rule == TransferRule::deletion) out.symbolic = out.symbolic + " + |dI| + |dO|";
    }
    return out;
}

// Sum of block lower bounds over a disjoint decomposition.
inline BoundReport compose_decomposition(const std::vector<BoundReport>& reports) {
    if (reports.empty()) throw Error("decomposition needs at least one block report");
    BoundReport out;
    out.kind = BoundKind::lower;
    out.method = Method::transfer;
    out.value = BoundValue(0);
    for (const auto& r : reports) {
        if (!r.is_lower()) throw Error("transfer rules defined for lower bounds only");
        out.value = out.value + r.value;
    }
    out.symbolic = "sum_i IO(C_i)";
    out.provenance.push_back("decomposition: sum over " + std::to_string(reports.size()) + " blocks");
    out.param("blocks", static_cast<std::int64_t>(reports.size()));
    return out;
}

}  // namespace iolb
