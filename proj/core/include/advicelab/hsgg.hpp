#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "advicelab/distribution.hpp"
#include "advicelab/problem.hpp"
#include "advicelab/rng.hpp"

namespace adv::hsgg {

/// A subset-guessing game instance: in round i a size-k/2 set A_i of
/// available characters (from 1..k) is revealed, the algorithm answers
/// y_i in 1..n subject to the history feasibility constraint, and the
/// correct character x_i in A_i is then revealed. The cost of an output is
/// the number of distinct answer characters used.
struct HSGGInstance {
    int n = 0;
    int k = 0;                            // even, k <= n
    std::vector<std::vector<int>> sets;   // A_i, each of size k/2, ascending
    std::vector<int> x;                   // x_i in A_i

    void validate() const;
};

/// An HSGG strategy: sees the instance (an online strategy must only read
/// sets[0..round] and x[0..round-1]), the current round, and its own past
/// answers; returns y_{round+1}.
using HsggAlgorithm =
    std::function<int(const HSGGInstance&, int round, std::span<const int> past_answers)>;

/// Answer y_i = x_i every round (the offline optimum witness; cost <= k).
HsggAlgorithm replay_x_algorithm();

/// Online strategy: reuse the first feasible previously-used character, else
/// open a fresh one.
HsggAlgorithm first_feasible_algorithm();

/// Online strategy: always answer a fresh, never-used character.
HsggAlgorithm fresh_character_algorithm();

/// Is `answer` feasible in round `round` given the instance and the past
/// answers? (For each t < round with y_t == answer, x_t must lie in A_round.)
bool hsgg_feasible(const HSGGInstance& instance, int round, std::span<const int> past_answers,
                   int answer);

struct HsggRun {
    std::vector<int> answers;
    int cost = 0;      // distinct answer characters
    int pair_cost = 0; // rounds introducing a new (answer, correct) pair
};

/// Run a strategy, enforcing feasibility each round (an infeasible answer is
/// an error naming the violated round).
HsggRun hsgg_simulate(const HSGGInstance& instance, const HsggAlgorithm& alg);

/// Number of distinct characters in an output.
int hsgg_cost(const std::vector<int>& answers);

/// Number of rounds i whose (y_i, x_i) pair is new.
int pair_cost(const HSGGInstance& instance, const std::vector<int>& answers);

/// Exact minimum cost over all feasible outputs (branch and bound over the
/// answer tree; intended for tiny instances).
int hsgg_exact_opt(const HSGGInstance& instance, std::uint64_t node_cap = 50'000'000);

/// Draw an instance of the hard distribution: A_i uniform over size-k/2
/// subsets, x_i uniform in A_i, independently per round.
HSGGInstance sample_hard_instance(int n, int k, RngStream& rng);

/// The same distribution in r-round form. Blocks carry two tokens
/// (the rank of A_i among size-k/2 subsets, then x_i); the round cost is the
/// new-pair indicator. Intended for desk-scale k and n.
RoundDistribution hsgg_hard_distribution(int n, int k);

/// The game as a generic online problem over interleaved requests
/// [rank(A_1), x_1, rank(A_2), x_2, ...]: answers at even steps are y_i (with
/// feasibility enforced), odd steps take the dummy answer 0. The step cost at
/// even steps is the fresh-character indicator, so a run's total equals the
/// distinct-character cost.
OnlineProblem hsgg_problem(int n, int k);

/// Encode an instance as the interleaved request sequence of hsgg_problem.
InputSequence hsgg_input(const HSGGInstance& instance);

/// Rank/unrank size-m subsets of {1..k} in lexicographic order.
std::uint64_t subset_rank(int k, const std::vector<int>& subset);
std::vector<int> subset_unrank(int k, int m, std::uint64_t rank);
std::uint64_t subset_count(int k, int m);

} // namespace adv::hsgg
