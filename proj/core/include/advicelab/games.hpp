#pragma once

#include <string>
#include <vector>

#include "advicelab/algorithm.hpp"
#include "advicelab/caps.hpp"
#include "advicelab/distribution.hpp"
#include "advicelab/infotheory.hpp"
#include "advicelab/problem.hpp"
#include "advicelab/rational.hpp"

namespace adv::games {

/// Square cost matrix with non-negative entries. Rows are adversary moves,
/// columns are algorithm moves.
struct CostMatrix {
    int q = 0;
    std::vector<double> entries; // row-major, q*q

    double at(int x, int y) const { return entries.at(static_cast<std::size_t>(x * q + y)); }
    double inf_norm() const; // max entry
    void validate() const;

    static CostMatrix sgkh(int q);                      // all-ones minus identity
    static CostMatrix identity(int q);                  // anti string guessing
    static CostMatrix bsg(double s, double t);          // [[0,s],[t,0]]
    static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);
};

struct GameSolution {
    double value = 0.0;
    info::FiniteDistribution row_strategy; // mu*, adversary
    info::FiniteDistribution col_strategy; // nu*, algorithm

    /// max_x A(x, nu*) - value and value - min_y A(mu*, y); both <= tol for a
    /// valid solution.
    double row_residual = 0.0;
    double col_residual = 0.0;
};

/// Exact value and optimal mixed strategies of the zero-sum game, by the
/// standard LP formulation solved with a dense simplex. Loomis certificates
/// are recomputed and must hold within `tol`, else this throws with the
/// residuals.
GameSolution solve_game(const CostMatrix& a, double tol = 1e-9);

struct RationalGameSolution {
    Rational value;
    std::vector<Rational> row_strategy;
    std::vector<Rational> col_strategy;
};

/// Rational-arithmetic variant for small matrices with rational entries.
RationalGameSolution solve_game_exact(const std::vector<std::vector<Rational>>& rows,
                                      const Caps& caps = Caps::defaults());

// --- The repeated matrix game as an online problem -------------------------
//
// An input is a character string x in [q]^n (tokens 0..q-1). The algorithm
// answers y_i knowing x_1..x_{i-1} but not x_i; the step cost is A(x_i, y_i).

InputSequence rmg_input(const std::vector<Token>& chars);

OnlineProblem rmg_problem(const CostMatrix& a, std::string name = "");

/// Draws one column according to nu* up front and plays it every round.
RandomizedAlgorithm rmg_random_alg(const CostMatrix& a, const GameSolution& solution);

/// ceil(log q) advice bits naming argmin_y sum_i A(x_i, y), smallest index on
/// ties; the body replays that column.
AdviceAlgorithm rmg_advice_alg(const CostMatrix& a);

/// n independent rounds of mu*; round i costs A(x_i, y_i).
RoundDistribution rmg_hard_distribution(const CostMatrix& a, const GameSolution& solution, int n);

/// n independent uniform rounds (the hard distribution of the string guessing
/// family, where mu* is uniform).
RoundDistribution rmg_uniform_distribution(const CostMatrix& a, int n);

} // namespace adv::games
