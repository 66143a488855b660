#include <doctest.h>

#include "advicelab/engine.hpp"
#include "advicelab/hsgg.hpp"
#include "advicelab/serialization.hpp"

#include "test_util.hpp"

using namespace adv;
using namespace adv::hsgg;

namespace {

// The worked instance: four rounds, characters 1..4, sets {1,2},{1,2},{3,4},{3,4}.
HSGGInstance worked_example() {
    HSGGInstance inst;
    inst.n = 4;
    inst.k = 4;
    inst.sets = {{1, 2}, {1, 2}, {3, 4}, {3, 4}};
    inst.x = {1, 2, 3, 4};
    return inst;
}

} // namespace

TEST_CASE("subset rank round trip") {
    for (int k : {4, 6}) {
        int m = k / 2;
        std::uint64_t count = subset_count(k, m);
        for (std::uint64_t r = 0; r < count; ++r) {
            auto s = subset_unrank(k, m, r);
            CHECK(subset_rank(k, s) == r);
        }
    }
    CHECK(subset_count(4, 2) == 6);
    CHECK(subset_count(6, 3) == 20);
}

TEST_CASE("the worked output 1133 is feasible with cost 2") {
    auto inst = worked_example();
    HsggAlgorithm fixed = [](const HSGGInstance&, int round, std::span<const int>) {
        const int answers[] = {1, 1, 3, 3};
        return answers[round];
    };
    auto run = hsgg_simulate(inst, fixed);
    CHECK(run.answers == std::vector<int>{1, 1, 3, 3});
    CHECK(run.cost == 2);
    CHECK(run.cost >= run.pair_cost / (inst.k / 2));
}

TEST_CASE("replaying the correct string costs at most k") {
    auto inst = worked_example();
    auto run = hsgg_simulate(inst, replay_x_algorithm());
    CHECK(run.cost == 4);
    CHECK(run.pair_cost == 4);
    CHECK(run.cost >= run.pair_cost / (inst.k / 2));

    RngStream rng(31, 0);
    for (int it = 0; it < 300; ++it) {
        int k = 2 * (1 + static_cast<int>(rng.next_below(3)));
        int n = k + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(12 - k + 1)));
        auto sample = sample_hard_instance(n, k, rng);
        auto r = hsgg_simulate(sample, replay_x_algorithm());
        CHECK(r.cost <= k);
    }
}

TEST_CASE("feasibility") {
    auto inst = worked_example();
    std::vector<int> past = {1, 1}; // 1 paired with x1=1 and x2=2
    CHECK(hsgg_feasible(inst, 2, past, 2));      // fresh character
    CHECK_FALSE(hsgg_feasible(inst, 2, past, 1)); // 1 carries {1,2}, A3 = {3,4}
    // a fresh character is always feasible
    for (int round = 0; round < 4; ++round) CHECK(hsgg_feasible(inst, round, {}, round + 1));

    HsggAlgorithm bad = [](const HSGGInstance&, int round, std::span<const int>) {
        return 1; // round 3 reuses 1 illegally
    };
    CHECK(throws_with([&] { hsgg_simulate(inst, bad); }, "round 3"));
}

TEST_CASE("exact optimum on the worked example") {
    CHECK(hsgg_exact_opt(worked_example()) == 2);
}

TEST_CASE("online strategies respect the cost decomposition") {
    RngStream rng(32, 0);
    for (int it = 0; it < 200; ++it) {
        int k = 4;
        int n = 6 + static_cast<int>(rng.next_below(5));
        auto inst = sample_hard_instance(n, k, rng);
        for (const auto& alg : {first_feasible_algorithm(), fresh_character_algorithm()}) {
            auto r = hsgg_simulate(inst, alg);
            CHECK(r.cost * (k / 2) >= r.pair_cost);
            CHECK(r.cost <= n);
            int opt = hsgg_exact_opt(inst);
            CHECK(opt <= k);
            CHECK(r.cost >= opt);
        }
    }
}

TEST_CASE("generic problem wrapper charges distinct characters") {
    auto inst = worked_example();
    auto p = hsgg_problem(4, 4);
    auto input = hsgg_input(inst);
    REQUIRE(input.requests.size() == 8);

    DeterministicAlgorithm fixed;
    fixed.decide = [](const DecideContext& ctx) -> Token {
        if (ctx.past_requests.size() % 2 == 1) return 0; // feedback step
        const int answers[] = {1, 1, 3, 3};
        return answers[ctx.past_requests.size() / 2];
    };
    auto trace = run(p, fixed, input);
    CHECK(trace.total == doctest::Approx(2.0));
}

TEST_CASE("hard distribution round costs count new pairs") {
    auto dist = hsgg_hard_distribution(4, 4);
    REQUIRE(dist.rounds == 4);
    // assemble a fixed tuple and check the pair accounting
    std::vector<Block> blocks = {{static_cast<Token>(subset_rank(4, {1, 2})), 1},
                                 {static_cast<Token>(subset_rank(4, {1, 2})), 1},
                                 {static_cast<Token>(subset_rank(4, {3, 4})), 3},
                                 {static_cast<Token>(subset_rank(4, {3, 4})), 3}};
    std::vector<Token> answers = {1, 0, 1, 0, 3, 0, 3, 0};
    CHECK(dist.round_cost(0, blocks, answers) == doctest::Approx(1.0));
    CHECK(dist.round_cost(1, blocks, answers) == doctest::Approx(0.0)); // pair (1,1) repeats
    CHECK(dist.round_cost(2, blocks, answers) == doctest::Approx(1.0));
    CHECK(dist.round_cost(3, blocks, answers) == doctest::Approx(0.0));
}

TEST_CASE("hsgg instance json round trip") {
    auto inst = worked_example();
    auto back = io::hsgg_instance_from_json(io::to_json(inst));
    CHECK(back.sets == inst.sets);
    CHECK(back.x == inst.x);
}
