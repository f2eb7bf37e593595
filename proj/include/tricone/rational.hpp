#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tricone {

// Exact rational arithmetic on int64 with __int128 intermediates.
// Always reduced, denominator positive. Overflow throws instead of wrapping:
// the decision procedures in this project are exact-arithmetic predicates and
// a silent wrap would corrupt a verdict.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_positive() const { return num_ > 0; }
    bool is_negative() const { return num_ < 0; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        __int128 n = i128(x.num_) * y.den_ + i128(y.num_) * x.den_;
        __int128 d = i128(x.den_) * y.den_;
        return from_i128(n, d);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        __int128 n = i128(x.num_) * y.den_ - i128(y.num_) * x.den_;
        __int128 d = i128(x.den_) * y.den_;
        return from_i128(n, d);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return from_i128(i128(x.num_) * y.num_, i128(x.den_) * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_i128(i128(x.num_) * y.den_, i128(x.den_) * y.num_);
    }

    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    Rational& operator/=(const Rational& y) { return *this = *this / y; }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y) {
        return i128(x.num_) * y.den_ < i128(y.num_) * x.den_;
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

    // floor(num/den) with correct behaviour for negatives.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    // Nearest integer; never called on half-integers by the canonicalization
    // code, but rounds half away from zero if it happens.
    std::int64_t round_nearest() const {
        Rational half(1, 2);
        return num_ >= 0 ? (*this + half).floor() : -((-*this + half).floor());
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Parses "p/q", "n", and terminating decimals like "0.25" or "-1.5".
    static Rational parse(std::string_view s);

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    static __int128 i128(std::int64_t v) { return static_cast<__int128>(v); }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = narrow(n);
        r.den_ = narrow(d);
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }

    static std::int64_t narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        return static_cast<std::int64_t>(v);
    }

    void assign(std::int64_t n, std::int64_t d) {
        *this = from_i128(i128(n), i128(d));
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

} // namespace tricone
