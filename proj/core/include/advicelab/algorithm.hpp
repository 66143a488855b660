#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "advicelab/bits.hpp"
#include "advicelab/problem.hpp"

namespace adv {

/// Explicit decision table: maps the visible observation (initial state
/// followed by the visible request prefix) to an answer. This is the finite
/// representation used by enumeration.
struct DecisionTable {
    std::map<std::vector<Token>, Token> entries;

    Token lookup(const std::vector<Token>& observation) const;
    bool operator==(const DecisionTable& o) const { return entries == o.entries; }
    bool operator<(const DecisionTable& o) const { return entries < o.entries; }
};

/// The observation key a table is indexed by: initial state, then the
/// requests visible at answer time (including the current one unless the
/// problem delays its reveal).
std::vector<Token> observation_key(const OnlineProblem& problem, Token initial_state,
                                   std::span<const Token> past_requests,
                                   std::optional<Token> current_request);

/// A deterministic decision rule: either a named strategy (arbitrary
/// function) or an explicit decision table.
struct DeterministicAlgorithm {
    std::string name;
    std::function<Token(const DecideContext&)> decide;
    std::optional<DecisionTable> table; // present for enumeration-facing algorithms

    bool has_table() const { return table.has_value(); }
};

/// Build an algorithm that plays from an explicit table.
DeterministicAlgorithm table_algorithm(const OnlineProblem& problem, DecisionTable table,
                                       std::string name = "table");

/// Constant-answer strategy.
DeterministicAlgorithm constant_algorithm(Token answer, std::string name = "");

/// A deterministic algorithm family indexed by a fixed-length advice string,
/// plus the oracle that maps each input to its advice.
struct AdviceAlgorithm {
    std::string name;
    std::function<int(std::size_t n)> advice_length; // non-decreasing in n
    std::function<BitString(const InputSequence&)> oracle;
    DeterministicAlgorithm body; // consumes the advice via its context

    /// True when the oracle always picks cost-minimal advice, in which case
    /// the run cost equals the min over the split family.
    bool oracle_is_optimal = false;
};

/// Wrap a no-advice deterministic algorithm as an advice algorithm with b=0.
AdviceAlgorithm without_advice(DeterministicAlgorithm alg);

/// A finite support of algorithms with selection probabilities (sum 1 within
/// 1e-12). All members must agree on the advice length bound.
struct RandomizedAlgorithm {
    std::string name;
    std::vector<std::pair<AdviceAlgorithm, double>> support;

    void validate() const; // throws if the probabilities are off
    int advice_length(std::size_t n) const;
};

RandomizedAlgorithm uniform_mixture(std::vector<AdviceAlgorithm> algs, std::string name = "");

} // namespace adv
