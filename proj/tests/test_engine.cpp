#include <doctest.h>

#include <cmath>

#include "test_util.hpp"

#include "advicelab/engine.hpp"
#include "advicelab/games.hpp"
#include "advicelab/guessing.hpp"

using namespace adv;

namespace {

OnlineProblem sgkh2() { return guessing::guess_problem(guessing::Variant::sgkh, 2); }

InputDistribution uniform_inputs(const OnlineProblem& p, std::size_t n) {
    InputDistribution dist;
    dist.support = p.enumerate_inputs(n);
    dist.probs = info::FiniteDistribution::uniform(dist.support.size());
    return dist;
}

/// Per-round uniform guessing as an explicit mixture of the q constant
/// columns (same expected cost by linearity).
RandomizedAlgorithm uniform_guesser(int q) {
    std::vector<AdviceAlgorithm> columns;
    for (int y = 0; y < q; ++y) columns.push_back(without_advice(constant_algorithm(y)));
    return uniform_mixture(std::move(columns), "uniform_guesser");
}

} // namespace

TEST_CASE("run on string guessing") {
    auto p = sgkh2();
    auto zero = constant_algorithm(0);
    CHECK(run(p, zero, games::rmg_input({0, 0})).total == doctest::Approx(0.0));
    CHECK(run(p, zero, games::rmg_input({1, 1})).total == doctest::Approx(2.0));

    auto anti = games::rmg_problem(games::CostMatrix::identity(2), "anti2");
    auto ones = constant_algorithm(1);
    CHECK(run(anti, ones, games::rmg_input({1, 1, 1})).total == doctest::Approx(3.0));
}

TEST_CASE("run rejects invalid answers naming the step") {
    auto p = sgkh2();
    auto bad = constant_algorithm(7, "bad");
    CHECK(throws_with([&] { run(p, bad, games::rmg_input({0, 0})); }, "step 0"));
}

TEST_CASE("advice length contract is enforced") {
    AdviceAlgorithm alg = without_advice(constant_algorithm(0));
    alg.advice_length = [](std::size_t) { return 3; }; // oracle still writes 0 bits
    CHECK(throws_with([&] { run_advice(sgkh2(), alg, games::rmg_input({0})); },
                      "advice length mismatch"));
}

TEST_CASE("expected cost of the uniform guesser") {
    auto p = sgkh2();
    auto dist = uniform_inputs(p, 4);
    auto res = expected_cost(p, uniform_guesser(2), dist);
    CHECK(res.exact);
    CHECK(res.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("expected cost of the optimal column mixture") {
    auto a3 = games::CostMatrix::sgkh(3);
    auto sol = games::solve_game(a3);
    auto p = games::rmg_problem(a3);
    auto alg = games::rmg_random_alg(a3, sol);
    for (std::size_t n : {1u, 3u, 5u}) {
        auto dist = uniform_inputs(p, n);
        CHECK(expected_cost(p, alg, dist).value ==
              doctest::Approx(2.0 / 3.0 * double(n)).epsilon(1e-9));
        // also against a lopsided distribution
        std::vector<double> w(dist.support.size(), 0.0);
        w[0] = 0.75;
        w[1] = 0.25;
        dist.probs = info::FiniteDistribution(w);
        CHECK(expected_cost(p, alg, dist).value ==
              doctest::Approx(2.0 / 3.0 * double(n)).epsilon(1e-9));
    }
}

TEST_CASE("best fixed guess against a single uniform round") {
    auto p = sgkh2();
    auto dist = uniform_inputs(p, 1);
    for (int y : {0, 1}) {
        auto res = expected_cost(p, without_advice(constant_algorithm(y)), dist);
        CHECK(res.value == doctest::Approx(0.5));
    }
}

TEST_CASE("monte carlo agrees with exact within four standard errors") {
    auto p = sgkh2();
    auto dist = uniform_inputs(p, 4);
    auto alg = uniform_guesser(2);
    auto exact = expected_cost(p, alg, dist, CostMode::exact);
    auto mc = expected_cost(p, alg, dist, CostMode::monte_carlo, 10'000, 42);
    CHECK_FALSE(mc.exact);
    CHECK(std::abs(mc.value - exact.value) <= 4.0 * mc.std_error);
}

TEST_CASE("round distribution sampling matches the marginals") {
    auto a2 = games::CostMatrix::sgkh(2);
    auto dist = games::rmg_uniform_distribution(a2, 3);
    const std::size_t trials = 40'000;
    std::vector<std::vector<double>> freq(3, std::vector<double>(2, 0.0));
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng(99, t);
        auto blocks = dist.sample_blocks(rng);
        for (int r = 0; r < 3; ++r) freq[r][static_cast<std::size_t>(blocks[r][0])] += 1.0;
    }
    for (int r = 0; r < 3; ++r) {
        double l1 = 0.0;
        for (int c = 0; c < 2; ++c) l1 += std::abs(freq[r][c] / trials - 0.5);
        CHECK(l1 <= 4.0 / std::sqrt(double(trials)));
    }
}

TEST_CASE("expected round costs decompose the total") {
    auto a2 = games::CostMatrix::sgkh(2);
    auto p = games::rmg_problem(a2);
    auto dist = games::rmg_uniform_distribution(a2, 4);
    auto per_round = expected_round_costs(p, constant_algorithm(0), dist);
    REQUIRE(per_round.size() == 4);
    for (double c : per_round) CHECK(c == doctest::Approx(0.5));
}

TEST_CASE("split advice") {
    auto nothing = without_advice(constant_algorithm(0));
    CHECK(split_advice(nothing, 4).size() == 1);

    auto a4 = games::CostMatrix::sgkh(4);
    auto advice = games::rmg_advice_alg(a4);
    auto members = split_advice(advice, 3);
    CHECK(members.size() == 4); // ceil(log 4) = 2 bits
    auto p = games::rmg_problem(a4);
    for (int y = 0; y < 4; ++y) {
        auto trace = run(p, members[static_cast<std::size_t>(y)], games::rmg_input({0, 1, 2}));
        for (Token t : trace.answers) CHECK(t == y);
    }
}

TEST_CASE("advice run equals the minimum over split members") {
    // holds for advice algorithms whose oracle picks cost-minimal advice
    auto a3 = games::CostMatrix::sgkh(3);
    auto p = games::rmg_problem(a3);
    auto advice = games::rmg_advice_alg(a3);
    REQUIRE(advice.oracle_is_optimal);
    auto members = split_advice(advice, 4);
    for (const auto& input : p.enumerate_inputs(4)) {
        double direct = run_advice(p, advice, input).total;
        double best = 1e18;
        for (const auto& m : members) best = std::min(best, run(p, m, input).total);
        CHECK(direct == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("split advice respects the cap") {
    AdviceAlgorithm wide = without_advice(constant_algorithm(0));
    wide.advice_length = [](std::size_t) { return 30; };
    CHECK_THROWS(split_advice(wide, 4));
}

TEST_CASE("repeat concat") {
    InputSequence a = games::rmg_input({0, 1});
    InputSequence b = games::rmg_input({1, 0});
    CHECK(repeat_concat({a}) == a);
    auto plain = repeat_concat({a, b});
    CHECK(plain.requests == std::vector<Token>{0, 1, 1, 0});
    CHECK(plain.round_starts.empty());
    auto marked = repeat_concat({a, b}, ConcatMode::marked);
    CHECK(marked.round_starts == std::vector<std::size_t>{2});

    InputSequence other = b;
    other.initial_state = 1;
    CHECK_THROWS(repeat_concat({a, other}));
}

TEST_CASE("derandomization family sizes") {
    // smallest integer strictly above log I / log(1+eps)
    CHECK(derandomize_min_family_size(1024.0, 1.0) == 11);
    CHECK(derandomize_min_family_size(1.0, 0.5) == 1);
    CHECK(derandomize_min_family_size(8.0, 1.0) == 4);
    // maximization: smallest integer above log I ((c-1)/eps + 1)
    CHECK(derandomize_max_family_size(16.0, 1.0, 0.5) == 5);
    CHECK(derandomize_max_family_size(1.0, 3.0, 0.5) == 1);
    RngStream rng(7, 0);
    for (int it = 0; it < 20; ++it) {
        double input_count = 1.0 + std::floor(rng.next_double() * 1000.0);
        double eps = 0.1 + rng.next_double();
        int t = derandomize_min_family_size(input_count, eps);
        double ratio = std::log2(input_count) / std::log2(1.0 + eps);
        CHECK(double(t) > ratio);
        CHECK(double(t - 1) <= ratio + 1e-12);
    }
}

TEST_CASE("derandomize_min covers all inputs") {
    auto p = sgkh2();
    auto rand = uniform_guesser(2);
    auto result = derandomize_min(p, rand, 2, 4.0, 1.0, 5);
    CHECK(result.report.t == 3);
    auto inputs = p.enumerate_inputs(2);
    for (const auto& input : inputs) {
        // E[uniform guesser] = 1 per two rounds
        double bound = (1.0 + 1.0) * 1.0;
        CHECK(run_advice(p, result.algorithm, input).total <= bound + 1e-9);
    }
    int b = result.algorithm.advice_length(2);
    CHECK(b == bits_for_count(3));
}

TEST_CASE("derandomize_max checks the strict ratio precondition") {
    // a toy maximization problem: guess the request, gain 1 when right
    OnlineProblem p;
    p.name = "toy_max";
    p.objective = Objective::max;
    p.initial_states = {0};
    p.reveal_before_answer = false;
    p.answer_alphabet = [](Token, std::span<const Token>, std::span<const Token>, Token) {
        return std::vector<Token>{0, 1};
    };
    p.step_cost = [](Token, std::span<const Token>, std::span<const Token>, Token request,
                     Token answer) { return request == answer ? 1.0 : 0.0; };
    p.enumerate_inputs = [](std::size_t n) {
        std::vector<InputSequence> out;
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            InputSequence in;
            in.initial_state = 0;
            for (std::size_t i = 0; i < n; ++i)
                in.requests.push_back(static_cast<Token>((v >> i) & 1));
            out.push_back(in);
        }
        return out;
    };
    auto rand = uniform_guesser(2);
    auto opt = [](const InputSequence& in) { return double(in.length()); };

    auto res = derandomize_max(p, rand, 2, 4.0, 2.0, 0.5, 3, opt);
    CHECK(res.report.t == derandomize_max_family_size(4.0, 2.0, 0.5));
    for (const auto& input : p.enumerate_inputs(2))
        CHECK(run_advice(p, res.algorithm, input).total >= (1.0 - 0.5) * 1.0 - 1e-9);

    // c = 1 cannot hold here: OPT = n but E[rand] = n/2
    CHECK(throws_with([&] { derandomize_max(p, rand, 2, 4.0, 1.0, 0.5, 3, opt); },
                      "strict-ratio"));
}
