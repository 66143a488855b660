#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "advicelab/engine.hpp"
#include "advicelab/games.hpp"
#include "advicelab/rng.hpp"
#include "advicelab/serialization.hpp"

using namespace adv;
using namespace adv::games;

TEST_CASE("game values of the guessing matrices") {
    for (int q = 2; q <= 6; ++q) {
        auto sol = solve_game(CostMatrix::sgkh(q));
        CHECK(sol.value == doctest::Approx(double(q - 1) / q).epsilon(1e-9));
        for (int i = 0; i < q; ++i) {
            CHECK(sol.row_strategy.mass(i) == doctest::Approx(1.0 / q).epsilon(1e-7));
            CHECK(sol.col_strategy.mass(i) == doctest::Approx(1.0 / q).epsilon(1e-7));
        }
        auto anti = solve_game(CostMatrix::identity(q));
        CHECK(anti.value == doctest::Approx(1.0 / q).epsilon(1e-9));
    }
}

TEST_CASE("weighted binary matrix value") {
    auto sol = solve_game(CostMatrix::bsg(1.0, 2.0));
    CHECK(sol.value == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(sol.col_strategy.mass(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(sol.col_strategy.mass(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    for (double s = 0.25; s <= 1.0; s += 0.25)
        for (double t = s; t <= 2.5; t += 0.5) {
            auto v = solve_game(CostMatrix::bsg(s, t)).value;
            CHECK(v == doctest::Approx(s * t / (s + t)).epsilon(1e-9));
        }
}

TEST_CASE("duality gap on random matrices") {
    RngStream rng(21, 0);
    for (int it = 0; it < 1000; ++it) {
        int q = 2 + static_cast<int>(rng.next_below(7));
        std::vector<std::vector<double>> rows(q, std::vector<double>(q));
        for (auto& row : rows)
            for (auto& v : row) v = rng.next_double();
        auto a = CostMatrix::from_rows(rows);
        auto sol = solve_game(a); // residual check inside throws past 1e-9
        CHECK(std::abs(sol.row_residual) <= 1e-9);
        CHECK(std::abs(sol.col_residual) <= 1e-9);

        // pure strategy sandwich: max_x min_y <= V <= min_y max_x
        double maximin = 0.0, minimax = 1e18;
        for (int x = 0; x < q; ++x) {
            double row_min = 1e18;
            for (int y = 0; y < q; ++y) row_min = std::min(row_min, a.at(x, y));
            maximin = std::max(maximin, row_min);
        }
        for (int y = 0; y < q; ++y) {
            double col_max = 0.0;
            for (int x = 0; x < q; ++x) col_max = std::max(col_max, a.at(x, y));
            minimax = std::min(minimax, col_max);
        }
        CHECK(sol.value >= maximin - 1e-9);
        CHECK(sol.value <= minimax + 1e-9);
    }
}

TEST_CASE("scaling the matrix scales the value") {
    RngStream rng(22, 0);
    for (int it = 0; it < 50; ++it) {
        int q = 2 + static_cast<int>(rng.next_below(4));
        std::vector<std::vector<double>> rows(q, std::vector<double>(q));
        for (auto& row : rows)
            for (auto& v : row) v = rng.next_double();
        double c = 0.5 + 3.0 * rng.next_double();
        auto scaled = rows;
        for (auto& row : scaled)
            for (auto& v : row) v *= c;
        auto sol = solve_game(CostMatrix::from_rows(rows));
        auto sol_scaled = solve_game(CostMatrix::from_rows(scaled));
        CHECK(sol_scaled.value == doctest::Approx(c * sol.value).epsilon(1e-7));
    }
}

TEST_CASE("exact rational game mode") {
    std::vector<std::vector<Rational>> a2 = {{Rational(0), Rational(1)},
                                             {Rational(1), Rational(0)}};
    auto sol = solve_game_exact(a2);
    CHECK(sol.value == Rational(1, 2));
    CHECK(sol.col_strategy[0] == Rational(1, 2));

    std::vector<std::vector<Rational>> bsg = {{Rational(0), Rational(1)},
                                              {Rational(2), Rational(0)}};
    auto wsol = solve_game_exact(bsg);
    CHECK(wsol.value == Rational(2, 3));
    CHECK(wsol.col_strategy[0] == Rational(1, 3));
    CHECK(wsol.col_strategy[1] == Rational(2, 3));

    std::vector<std::vector<Rational>> a4 = {
        {Rational(0), Rational(1), Rational(1), Rational(1)},
        {Rational(1), Rational(0), Rational(1), Rational(1)},
        {Rational(1), Rational(1), Rational(0), Rational(1)},
        {Rational(1), Rational(1), Rational(1), Rational(0)}};
    CHECK(solve_game_exact(a4).value == Rational(3, 4));
}

TEST_CASE("rmg advice algorithm plays the best column") {
    auto a2 = CostMatrix::sgkh(2);
    auto p = rmg_problem(a2);
    auto advice = rmg_advice_alg(a2);
    auto trace = run_advice(p, advice, rmg_input({0, 0, 0}));
    CHECK(trace.total == doctest::Approx(0.0));
    for (Token y : trace.answers) CHECK(y == 0);
}

TEST_CASE("rmg advice cost never exceeds Vn") {
    auto a3 = CostMatrix::sgkh(3);
    auto p = rmg_problem(a3);
    auto sol = solve_game(a3);
    auto advice = rmg_advice_alg(a3);
    RngStream rng(23, 0);
    for (int it = 0; it < 100; ++it) {
        std::vector<Token> x(10);
        for (auto& c : x) c = static_cast<Token>(rng.next_below(3));
        double cost = run_advice(p, advice, rmg_input(x)).total;
        CHECK(cost <= sol.value * 10.0 + 1e-9);
        // the advice names the best column exactly
        double best = 1e18;
        for (int y = 0; y < 3; ++y) {
            double c = 0.0;
            for (Token xi : x) c += a3.at(xi, y);
            best = std::min(best, c);
        }
        CHECK(cost == doctest::Approx(best));
    }
}

TEST_CASE("hard distribution marginals and fixed columns") {
    auto a2 = CostMatrix::sgkh(2);
    auto sol = solve_game(a2);
    auto dist = rmg_hard_distribution(a2, sol, 5);
    REQUIRE(dist.rounds == 5);
    for (const auto& round : dist.per_round) {
        CHECK(round.probs.mass(0) == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(round.probs.mass(1) == doctest::Approx(0.5).epsilon(1e-9));
    }
    // every fixed column answer pays at least V per round
    auto p = rmg_problem(a2);
    for (int y = 0; y < 2; ++y) {
        auto per_round = expected_round_costs(p, constant_algorithm(y), dist);
        for (double c : per_round) CHECK(c >= sol.value - 1e-9);
    }
}

TEST_CASE("cost matrix json round trip") {
    auto a = CostMatrix::bsg(1.0, 2.0);
    auto back = io::cost_matrix_from_json(io::to_json(a));
    CHECK(back.q == 2);
    CHECK(back.at(1, 0) == doctest::Approx(2.0));
    CHECK(io::cost_matrix_from_json("{\"q\":2,\"rows\":[[0,1],[1,0]]}").inf_norm() == 1.0);
}
