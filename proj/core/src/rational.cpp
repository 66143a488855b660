#include "advicelab/rational.hpp"

#include <limits>

namespace adv {

namespace {

__int128 gcd_i128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("Rational: 64-bit overflow after reduction");
    return static_cast<std::int64_t>(v);
}

} // namespace

Rational Rational::from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd_i128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
}

void Rational::assign(std::int64_t n, std::int64_t d) {
    *this = from_i128(n, d);
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    std::int64_t n = std::stoll(s.substr(0, slash));
    std::int64_t d = std::stoll(s.substr(slash + 1));
    return Rational(n, d);
}

Rational Rational::pow2_inverse(int e) {
    if (e < 0 || e > 62) throw std::invalid_argument("Rational::pow2_inverse: exponent out of range");
    return Rational(1, std::int64_t{1} << e);
}

} // namespace adv
