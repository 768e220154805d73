#pragma once

#include <cstdint>
#include <string>

#include "ffhyper/errors.hpp"

namespace ffhyper {

namespace detail {

using int128 = __int128;

inline int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::int64_t narrow64(int128 v, const char* who) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw capacity_error(std::string(who) + ": 64-bit coefficient overflow");
    return static_cast<std::int64_t>(v);
}

} // namespace detail

/// Exact rational with 64-bit numerator/denominator, always in lowest terms
/// with positive denominator. Intermediates run in 128 bits; results that do
/// not fit back into 64 bits raise capacity_error.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n) {} // NOLINT: implicit integer promotion is intended
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    static Rational from128(detail::int128 n, detail::int128 d) {
        Rational r;
        r.assign128(n, d);
        return r;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(detail::int128(a.num_) * b.den_ + detail::int128(b.num_) * a.den_,
                       detail::int128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(detail::int128(a.num_) * b.den_ - detail::int128(b.num_) * a.den_,
                       detail::int128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(detail::int128(a.num_) * b.num_, detail::int128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from128(detail::int128(a.num_) * b.den_, detail::int128(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = detail::narrow64(-detail::int128(num_), "Rational::negate");
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return detail::int128(a.num_) * b.den_ < detail::int128(b.num_) * a.den_;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "num/den" in lowest terms, denominator always printed ("3/1", "-2/5").
    std::string to_string() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses the to_string() form; plain integers ("7") are accepted too.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

private:
    void assign(std::int64_t n, std::int64_t d) { assign128(n, d); }

    void assign128(detail::int128 n, detail::int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            num_ = 0;
            den_ = 1;
            return;
        }
        detail::int128 g = detail::gcd128(n, d);
        num_ = detail::narrow64(n / g, "Rational");
        den_ = detail::narrow64(d / g, "Rational");
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace ffhyper
