#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

#include "advicelab/engine.hpp"
#include "advicelab/games.hpp"
#include "advicelab/guessing.hpp"
#include "advicelab/oracle.hpp"
#include "advicelab/serialization.hpp"

#include "test_util.hpp"

using namespace adv;
using namespace adv::oracle;

namespace {

OnlineProblem sgkh(int q) { return guessing::guess_problem(guessing::Variant::sgkh, q); }

InputDistribution uniform_dist(const OnlineProblem& p, std::size_t n) {
    InputDistribution dist;
    dist.support = p.enumerate_inputs(n);
    dist.probs = info::FiniteDistribution::uniform(dist.support.size());
    return dist;
}

} // namespace

TEST_CASE("algorithm counts over the guessing tree") {
    auto p2 = sgkh(2);
    CHECK(count_algorithms(p2, p2.enumerate_inputs(1), 1'000'000) == 2);
    CHECK(count_algorithms(p2, p2.enumerate_inputs(2), 1'000'000) == 8);
    CHECK(count_algorithms(p2, p2.enumerate_inputs(3), 1'000'000) == 128); // 2^(1+2+4)
    auto p3 = sgkh(3);
    CHECK(count_algorithms(p3, p3.enumerate_inputs(1), 1'000'000) == 3);
    // enumeration is duplicate free and matches the count
    auto tables = enumerate_algorithms(p2, p2.enumerate_inputs(2));
    CHECK(tables.size() == 8);
    std::set<DecisionTable> unique(tables.begin(), tables.end());
    CHECK(unique.size() == 8);
}

TEST_CASE("enumeration cap is contractual") {
    auto p = sgkh(2);
    Caps caps;
    caps.max_enum_algorithms = 4;
    CHECK(throws_with(
        [&] { enumerate_algorithms(p, p.enumerate_inputs(2), caps); }, "cap"));
}

TEST_CASE("best advice on one uniform round") {
    auto p = sgkh(2);
    auto dist = uniform_dist(p, 1);
    auto none = best_advice_value(p, dist, 0);
    CHECK(none.value == doctest::Approx(0.5));
    CHECK(none.exact);
    auto one_bit = best_advice_value(p, dist, 1);
    CHECK(one_bit.value == doctest::Approx(0.0));
    CHECK(one_bit.witnesses.size() == 2);
}

TEST_CASE("best advice on two uniform rounds with one bit") {
    auto p = sgkh(2);
    auto dist = uniform_dist(p, 2);
    CHECK(best_advice_value(p, dist, 1).value == doctest::Approx(0.5));
    CHECK(best_advice_value(p, dist, 0).value == doctest::Approx(1.0));
    CHECK(best_advice_value(p, dist, 2).value == doctest::Approx(0.0));
}

TEST_CASE("partition dp agrees with the exhaustive subset search") {
    auto p = sgkh(2);
    for (std::size_t n : {1u, 2u, 3u}) {
        auto dist = uniform_dist(p, n);
        for (int b : {0, 1, 2}) {
            auto fast = best_advice_value(p, dist, b);
            CHECK(fast.method == "partition_dp");
            // force the enumeration path by dropping the separable hint
            OnlineProblem blind = p;
            blind.separable_step_cost = nullptr;
            auto slow = best_advice_value(blind, dist, b);
            CHECK(slow.method == "subset_search");
            CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-9));
        }
    }
}

TEST_CASE("witnesses achieve the reported value") {
    auto p = sgkh(2);
    auto dist = uniform_dist(p, 3);
    for (int b : {0, 1, 2}) {
        auto res = best_advice_value(p, dist, b);
        REQUIRE(!res.witnesses.empty());
        std::vector<DeterministicAlgorithm> algs;
        for (const auto& t : res.witnesses) algs.push_back(table_algorithm(p, t));
        double total = 0.0;
        for (std::size_t i = 0; i < dist.support.size(); ++i) {
            double best = 1e18;
            for (const auto& a : algs) best = std::min(best, run(p, a, dist.support[i]).total);
            total += dist.probs.mass(i) * best;
        }
        CHECK(total == doctest::Approx(res.value).epsilon(1e-9));
    }
}

TEST_CASE("best advice is monotone in b and hits the pointwise optimum") {
    auto p = sgkh(2);
    auto dist = uniform_dist(p, 3);
    double prev = 1e18;
    for (int b = 0; b <= 3; ++b) {
        double v = best_advice_value(p, dist, b).value;
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
    // 2^b large enough covers every input's optimal behavior
    CHECK(best_advice_value(p, dist, 3).value == doctest::Approx(0.0));
}

TEST_CASE("greedy mode is labeled and upper bounds the optimum") {
    auto p = sgkh(2);
    auto dist = uniform_dist(p, 2);
    auto greedy = best_advice_value(p, dist, 1, SearchMode::greedy);
    CHECK_FALSE(greedy.exact);
    CHECK(greedy.method == "greedy");
    CHECK(greedy.value >= best_advice_value(p, dist, 1).value - 1e-12);
}

TEST_CASE("yao quantity at b = 0") {
    // b = 0 equals the best single deterministic algorithm
    auto p = sgkh(2);
    auto dist = uniform_dist(p, 2);
    double best = 1e18;
    for (const auto& table : enumerate_algorithms(p, dist.support)) {
        auto alg = table_algorithm(p, table);
        double total = 0.0;
        for (std::size_t i = 0; i < dist.support.size(); ++i)
            total += dist.probs.mass(i) * run(p, alg, dist.support[i]).total;
        best = std::min(best, total);
    }
    CHECK(best_advice_value(p, dist, 0).value == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("certify the guessing bounds on tiny instances") {
    for (int n = 1; n <= 3; ++n) {
        auto p = sgkh(2);
        auto dist = uniform_dist(p, static_cast<std::size_t>(n));
        auto report = certify_bound("sg_lower", {{"q", 2}, {"n", double(n)}}, p, dist, {0, 1, 2});
        CHECK(report.all_sound);
        for (const auto& row : report.rows) CHECK(row.slack >= -1e-9);
        // the b = 0 row is tight for the uniform distribution
        CHECK(report.rows[0].slack == doctest::Approx(0.0).epsilon(1e-6));
    }
    auto anti = guessing::guess_problem(guessing::Variant::anti, 2);
    auto dist = uniform_dist(anti, 3);
    CHECK(certify_bound("antisg_lower", {{"q", 2}, {"n", 3}}, anti, dist, {0, 1, 2}).all_sound);

    auto bsg = guessing::guess_problem(guessing::Variant::bsg, 2, 1.0, 2.0);
    auto bdist = uniform_dist(bsg, 3);
    CHECK(certify_bound("bsg_lower", {{"s", 1}, {"t", 2}, {"n", 3}}, bsg, bdist, {0, 1, 2})
              .all_sound);
    // JSON report has the per-row fields
    auto text = io::to_json(certify_bound("sg_lower", {{"q", 2}, {"n", 2}}, sgkh(2),
                                          uniform_dist(sgkh(2), 2), {0, 1}));
    CHECK(text.find("\"brute_force\"") != std::string::npos);
}

TEST_CASE("a bound with a saturated floor is vacuously sound") {
    auto p = sgkh(2);
    auto dist = uniform_dist(p, 2);
    auto report = certify_bound("sg_lower", {{"q", 2}, {"n", 2}}, p, dist, {10});
    CHECK(report.all_sound);
    CHECK(report.rows[0].bound == doctest::Approx(0.0));
}

TEST_CASE("cost floors match the bit bounds") {
    // floor(bits_needed(alpha)) == alpha on both branches
    for (double alpha : {0.1, 0.2, 0.3}) {
        double bits = info::sg_lower(2, alpha, 1.0).value;
        CHECK(bound_floor("sg_lower", {{"q", 2}}, bits, 1.0) ==
              doctest::Approx(alpha).epsilon(1e-9));
        double anti_bits = info::antisg_lower(2, alpha, 1.0).value;
        CHECK(bound_floor("antisg_lower", {{"q", 2}}, anti_bits, 1.0) ==
              doctest::Approx(alpha).epsilon(1e-9));
    }
}

TEST_CASE("belady") {
    // within the initial cache there are no faults
    CHECK(belady(2, {0, 1, 0, 1, 0}) == 0);
    CHECK(belady(2, {0, 1, 2, 0, 1}) == 2); // classic miss pattern
    RngStream rng(61, 0);
    for (int it = 0; it < 50; ++it) {
        int k = 1 + static_cast<int>(rng.next_below(3));
        int pages = k + 1 + static_cast<int>(rng.next_below(2));
        std::vector<int> seq(10);
        for (auto& s : seq) s = static_cast<int>(rng.next_below(pages));
        // farthest-in-future equals the exhaustive optimum over eviction orders
        std::function<int(std::size_t, std::vector<int>)> brute =
            [&](std::size_t i, std::vector<int> cache) -> int {
            if (i == seq.size()) return 0;
            int p = seq[i];
            if (std::find(cache.begin(), cache.end(), p) != cache.end())
                return brute(i + 1, cache);
            int best = 1 << 20;
            for (std::size_t victim = 0; victim < cache.size(); ++victim) {
                auto next = cache;
                next[victim] = p;
                best = std::min(best, 1 + brute(i + 1, next));
            }
            return best;
        };
        std::vector<int> init(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) init[static_cast<std::size_t>(i)] = i;
        CHECK(belady(k, seq) == brute(0, init));
    }
}

TEST_CASE("belady verifies the paging example") {
    CHECK(belady(2, {0, 1, 2, 0, 1}, {0, 1}) == 2);
    CHECK_THROWS(belady(2, {0, 1}, {0}));
}
