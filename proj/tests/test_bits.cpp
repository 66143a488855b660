#include <doctest.h>

#include "advicelab/bits.hpp"
#include "advicelab/numeric.hpp"
#include "advicelab/rational.hpp"

using namespace adv;

TEST_CASE("bitstring uint round trip") {
    BitString b = BitString::from_uint(5, 3);
    CHECK(b.to_string() == "101");
    CHECK(b.to_uint(0, 3) == 5);
    CHECK(BitString::parse("101") == b);
    CHECK(b.slice(1, 2).to_string() == "01");
}

TEST_CASE("bits_for_count") {
    CHECK(bits_for_count(1) == 0);
    CHECK(bits_for_count(2) == 1);
    CHECK(bits_for_count(3) == 2);
    CHECK(bits_for_count(4) == 2);
    CHECK(bits_for_count(5) == 3);
}

TEST_CASE("self delimiting lengths") {
    CHECK(self_delimiting_encode(1).size() == 3);
    CHECK(self_delimiting_encode(5).size() == 7);
    CHECK(self_delimiting_encode(5).to_string() == "1110101");
}

TEST_CASE("self delimiting round trip") {
    for (std::uint64_t n = 1; n <= 1000; ++n) {
        BitString code = self_delimiting_encode(n);
        // length is exactly 2*ceil(log2(n+1)) + 1
        CHECK(code.size() == 2 * static_cast<std::size_t>(bits_for_count(n + 1)) + 1);
        std::size_t pos = 0;
        CHECK(self_delimiting_decode(code, pos) == n);
        CHECK(pos == code.size());
    }
}

TEST_CASE("self delimiting decode rejects malformed prefixes") {
    std::size_t pos = 0;
    CHECK_THROWS(self_delimiting_decode(BitString::parse("111"), pos));
    pos = 0;
    CHECK_THROWS(self_delimiting_decode(BitString::parse("10"), pos));
}

TEST_CASE("pairwise sum matches plain sum") {
    std::vector<double> vals;
    for (int i = 0; i < 1000; ++i) vals.push_back(1.0 / (i + 1.0));
    double plain = 0.0;
    for (double v : vals) plain += v;
    CHECK(pairwise_sum(vals) == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("rational arithmetic") {
    Rational a(1, 3), b(1, 6);
    CHECK((a + b) == Rational(1, 2));
    CHECK((a - b) == Rational(1, 6));
    CHECK((a * b) == Rational(1, 18));
    CHECK((a / b) == Rational(2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational::parse("19/48").to_string() == "19/48");
    CHECK(Rational::pow2_inverse(5) == Rational(1, 32));
    CHECK_THROWS(Rational(1, 0));
}
