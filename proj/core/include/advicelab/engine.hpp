#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advicelab/algorithm.hpp"
#include "advicelab/caps.hpp"
#include "advicelab/distribution.hpp"
#include "advicelab/numeric.hpp"
#include "advicelab/problem.hpp"

namespace adv {

struct RunTrace {
    std::vector<double> step_costs;
    std::vector<Token> answers;
    double total = 0.0;
};

/// Run a deterministic algorithm on one input with a fixed advice string.
/// Throws if the algorithm produces an answer outside the current answer
/// alphabet (the error names the step) or if the input is invalid.
RunTrace run(const OnlineProblem& problem, const DeterministicAlgorithm& alg,
             const InputSequence& input, const BitString& advice = BitString());

/// Run an advice algorithm: queries its oracle, checks the advice length
/// contract, then runs the body.
RunTrace run_advice(const OnlineProblem& problem, const AdviceAlgorithm& alg,
                    const InputSequence& input);

enum class CostMode { exact, monte_carlo };

struct ExpectedCost {
    double value = 0.0;
    double std_error = 0.0; // 0 in exact mode
    std::size_t trials = 0; // 0 in exact mode
    bool exact = true;
};

/// Expected cost of an advice algorithm against a flat input distribution.
ExpectedCost expected_cost(const OnlineProblem& problem, const AdviceAlgorithm& alg,
                           const InputDistribution& dist, CostMode mode = CostMode::exact,
                           std::size_t trials = 10'000, std::uint64_t seed = 1,
                           const Caps& caps = Caps::defaults());

/// Expected cost of a randomized algorithm (expectation over both the input
/// and the algorithm draw).
ExpectedCost expected_cost(const OnlineProblem& problem, const RandomizedAlgorithm& alg,
                           const InputDistribution& dist, CostMode mode = CostMode::exact,
                           std::size_t trials = 10'000, std::uint64_t seed = 1,
                           const Caps& caps = Caps::defaults());

/// Same, against an r-round product distribution.
ExpectedCost expected_cost(const OnlineProblem& problem, const AdviceAlgorithm& alg,
                           const RoundDistribution& dist, CostMode mode = CostMode::exact,
                           std::size_t trials = 10'000, std::uint64_t seed = 1,
                           const Caps& caps = Caps::defaults());

ExpectedCost expected_cost(const OnlineProblem& problem, const RandomizedAlgorithm& alg,
                           const RoundDistribution& dist, CostMode mode = CostMode::exact,
                           std::size_t trials = 10'000, std::uint64_t seed = 1,
                           const Caps& caps = Caps::defaults());

/// Exact expected per-round costs of a deterministic algorithm against an
/// r-round distribution (used by the direct-product checks).
std::vector<double> expected_round_costs(const OnlineProblem& problem,
                                         const DeterministicAlgorithm& alg,
                                         const RoundDistribution& dist,
                                         const Caps& caps = Caps::defaults());

/// Split an advice algorithm at length n into its 2^b deterministic members,
/// one per advice string (in advice-value order).
std::vector<DeterministicAlgorithm> split_advice(const AdviceAlgorithm& alg, std::size_t n,
                                                 const Caps& caps = Caps::defaults());

enum class ConcatMode { plain, marked };

/// Concatenate request blocks sharing an initial state. Marked mode records
/// round boundaries in the result so repeated-problem semantics can reset
/// state at each boundary.
InputSequence repeat_concat(const std::vector<InputSequence>& blocks,
                            ConcatMode mode = ConcatMode::plain);

struct DerandomizeReport {
    int t = 0;             // family size
    int tries = 1;         // resampling rounds used
    double worst_ratio = 0.0;
    std::vector<std::string> member_names;
};

struct DerandomizeResult {
    AdviceAlgorithm algorithm;
    DerandomizeReport report;
};

/// Number of sampled algorithms for the minimization derandomization:
/// the smallest integer t with log2(I)/log2(1+eps) < t.
int derandomize_min_family_size(double input_count, double eps);

/// Number of sampled algorithms for the maximization derandomization:
/// the smallest integer t with log2(I) * ((c-1)/eps + 1) < t.
int derandomize_max_family_size(double input_count, double strict_ratio, double eps);

/// Sample t deterministic algorithms from `rand` so that on every input of
/// length n the best of them is within (1+eps) of the expectation; the
/// coverage is verified exhaustively and resampled on failure.
DerandomizeResult derandomize_min(const OnlineProblem& problem, const RandomizedAlgorithm& rand,
                                  std::size_t n, double input_count, double eps,
                                  std::uint64_t seed, int retry_budget = 64,
                                  const Caps& caps = Caps::defaults());

/// Maximization variant. `opt_value` must give OPT per input; the strict
/// ratio precondition OPT <= c * E[rand] is verified on every input first.
DerandomizeResult derandomize_max(const OnlineProblem& problem, const RandomizedAlgorithm& rand,
                                  std::size_t n, double input_count, double strict_ratio,
                                  double eps, std::uint64_t seed,
                                  const std::function<double(const InputSequence&)>& opt_value,
                                  int retry_budget = 64, const Caps& caps = Caps::defaults());

} // namespace adv
