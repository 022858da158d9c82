#pragma once

#include <compare>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "iolb/error.hpp"

namespace iolb {

// Exact rational over int64 with 128-bit intermediates. Overflow of the
// normalized result throws rather than wrapping; every bound value in the
// library stays far below 2^63.
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    [[nodiscard]] std::int64_t num() const { return num_; }
    [[nodiscard]] std::int64_t den() const { return den_; }
    [[nodiscard]] bool is_integer() const { return den_ == 1; }
    [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    [[nodiscard]] std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if ((num_ % den_ != 0) && (num_ < 0)) --q;
        return q;
    }
    [[nodiscard]] std::int64_t ceil() const { return -Rational(-num_, den_).floor(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error("rational division by zero");
        return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const __int128 l = static_cast<__int128>(a.num_) * b.den_;
        const __int128 r = static_cast<__int128>(b.num_) * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // "p/q", or "p" when the denominator is 1.
    [[nodiscard]] std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    [[nodiscard]] std::string decimal_str() const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", to_double());
        return buf;
    }

    // Parses "12", "-3/4" or a plain decimal such as "0.052" exactly.
    static Rational parse(std::string_view s) {
        if (s.empty()) throw Error("empty rational literal");
        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
        }
        auto dot = s.find('.');
        if (dot == std::string_view::npos) return Rational(parse_int(s));
        const bool neg = s.front() == '-';
        std::string_view ip = s.substr(neg ? 1 : 0, dot - (neg ? 1 : 0));
        std::string_view fp = s.substr(dot + 1);
        if (fp.size() > 17) throw Error("too many decimal digits in '" + std::string(s) + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        const std::int64_t whole = ip.empty() ? 0 : parse_int(ip);
        const std::int64_t frac = fp.empty() ? 0 : parse_int(fp);
        Rational r = Rational(whole) + Rational(frac, scale);
        return neg ? -r : r;
    }

  private:
    static std::int64_t parse_int(std::string_view s) {
        if (s.empty()) throw Error("malformed number");
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw Error("malformed number '" + std::string(s) + "'");
        __int128 v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw Error("malformed number '" + std::string(s) + "'");
            v = v * 10 + (s[i] - '0');
            if (v > INT64_MAX) throw Error("number out of range '" + std::string(s) + "'");
        }
        return static_cast<std::int64_t>(neg ? -v : v);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rational from_wide(__int128 n, __int128 d) {
        if (d == 0) throw Error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const __int128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX) throw Error("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    void assign(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational pow(Rational base, int exp) {
    Rational r(1);
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace iolb
