#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "advicelab/algorithm.hpp"
#include "advicelab/caps.hpp"
#include "advicelab/distribution.hpp"
#include "advicelab/problem.hpp"

namespace adv::oracle {

/// Number of distinct deterministic algorithms over the given inputs
/// (product of answer-alphabet sizes over reachable observations, respecting
/// feasibility along each answer history). Saturates at cap+1.
std::uint64_t count_algorithms(const OnlineProblem& problem,
                               const std::vector<InputSequence>& inputs, std::uint64_t cap);

/// Visit every deterministic decision table over the given inputs, exactly
/// once each. Throws if the count exceeds the cap.
void for_each_algorithm(const OnlineProblem& problem, const std::vector<InputSequence>& inputs,
                        const std::function<void(const DecisionTable&)>& visit,
                        const Caps& caps = Caps::defaults());

/// Convenience: collect all tables (same cap).
std::vector<DecisionTable> enumerate_algorithms(const OnlineProblem& problem,
                                                const std::vector<InputSequence>& inputs,
                                                const Caps& caps = Caps::defaults());

enum class SearchMode { exact, greedy };

struct BestAdviceResult {
    double value = 0.0;
    std::vector<DecisionTable> witnesses; // the chosen 2^b algorithms
    bool exact = true;                    // false for the greedy heuristic
    std::string method;                   // "partition_dp", "subset_search", or "greedy"
};

/// Optimal expected cost achievable with b advice bits against `dist`:
/// min over sets of 2^b deterministic algorithms of E_sigma[min over the set].
/// Exact mode uses the min-plus partition DP over input subsets when the
/// problem has separable step costs and the support is small, else an
/// exhaustive subset search over deduplicated cost vectors. Greedy mode is an
/// upper bound and is flagged as heuristic.
BestAdviceResult best_advice_value(const OnlineProblem& problem, const InputDistribution& dist,
                                   int b, SearchMode mode = SearchMode::exact,
                                   const Caps& caps = Caps::defaults());

/// The cost floor implied by a named bound formula for a given advice budget
/// b on inputs of length n. Supported ids: sg_lower, antisg_lower, bsg_lower,
/// rmg_lower, techlemma_bound.
double bound_floor(const std::string& formula_id, const std::map<std::string, double>& params,
                   double b, double n);

struct CertifyRow {
    int b = 0;
    double bound = 0.0;       // formula floor
    double brute_force = 0.0; // best_advice_value
    double slack = 0.0;       // brute_force - bound
    bool sound = false;       // brute_force >= bound - tol
};

struct CertifyReport {
    std::string formula_id;
    std::string problem;
    std::vector<CertifyRow> rows;
    bool all_sound = true;
};

/// For every b in the grid, check that the brute-force optimal advice cost is
/// at least the formula's floor. A violation makes the report FAIL.
CertifyReport certify_bound(const std::string& formula_id,
                            const std::map<std::string, double>& params,
                            const OnlineProblem& problem, const InputDistribution& dist,
                            const std::vector<int>& b_grid,
                            const Caps& caps = Caps::defaults());

/// Offline paging optimum (farthest-in-future eviction), counting faults
/// against an initial cache of pages {0..k-1}.
int belady(int k, const std::vector<int>& pages);
int belady(int k, const std::vector<int>& pages, std::vector<int> initial_cache);

} // namespace adv::oracle
