#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace adv {

/// Exact rational on 64-bit words with 128-bit intermediates. Overflow of the
/// reduced result is a hard error; the desk-scale instances here stay far
/// below the limit.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

    static Rational from_i128(__int128 n, __int128 d);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(static_cast<__int128>(a.num_) * b.num_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from_i128(static_cast<__int128>(a.num_) * b.den_,
                         static_cast<__int128>(a.den_) * b.num_);
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
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// "p/q" (or just "p" for integers).
    std::string to_string() const;

    /// Parse "p/q" or "p".
    static Rational parse(const std::string& s);

    /// 2^-e as an exact rational (e in [0, 62]).
    static Rational pow2_inverse(int e);

private:
    void assign(std::int64_t n, std::int64_t d);

    std::int64_t num_;
    std::int64_t den_; // > 0, gcd(|num|, den) == 1
};

} // namespace adv
