#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace adv {

/// Requests, answers and states are small integer tokens. What a token means
/// is up to the problem that defines it.
using Token = int;

enum class Objective { min, max };

/// An initial state plus an ordered request sequence.
struct InputSequence {
    Token initial_state = 0;
    std::vector<Token> requests;

    /// Indices where a new round begins (set by marked concatenation,
    /// empty otherwise). A leading 0 is implied and never stored.
    std::vector<std::size_t> round_starts;

    std::size_t length() const { return requests.size(); }

    bool operator==(const InputSequence& o) const {
        return initial_state == o.initial_state && requests == o.requests &&
               round_starts == o.round_starts;
    }
};

/// What a deterministic decision rule sees when it answers one request.
/// For problems with delayed reveal (guessing games), `request` is absent:
/// the algorithm answers before the current request becomes visible.
struct DecideContext {
    Token initial_state = 0;
    std::span<const Token> past_requests;
    std::span<const Token> past_answers;
    std::optional<Token> request;
    const class BitString* advice = nullptr; // null when the algorithm reads none
    std::size_t step = 0;
};

/// A finite online problem. The alphabets are functions of the visible
/// history so that feasibility constraints can depend on earlier play.
struct OnlineProblem {
    std::string name;
    Objective objective = Objective::min;
    std::vector<Token> initial_states;

    /// If false, the current request is hidden from the decision rule
    /// (it still drives cost accounting once the answer is fixed).
    bool reveal_before_answer = true;

    /// Valid answers given (initial state, past requests, past answers,
    /// current request). Never empty for a reachable history.
    std::function<std::vector<Token>(Token initial_state, std::span<const Token> past_requests,
                                     std::span<const Token> past_answers, Token request)>
        answer_alphabet;

    /// Non-negative cost charged at this step.
    std::function<double(Token initial_state, std::span<const Token> past_requests,
                         std::span<const Token> past_answers, Token request, Token answer)>
        step_cost;

    /// Optional request validity check (position-wise).
    std::function<std::vector<Token>(Token initial_state, std::span<const Token> past_requests)>
        request_alphabet;

    /// Optional: all valid inputs with a given number of requests. Needed by
    /// enumeration-facing operations (derandomization, the brute-force oracle).
    std::function<std::vector<InputSequence>(std::size_t n)> enumerate_inputs;

    /// Optional: cost contribution of the answer given at `step`, as a
    /// function of the full input only. Present exactly when the total cost
    /// of a run is the sum of such terms (no dependence on other answers);
    /// it unlocks the exact min-plus oracle path.
    std::function<double(const InputSequence&, std::size_t step, Token answer)> separable_step_cost;
};

/// Checks that every request of `input` is valid for `problem` (no-op when
/// the problem does not carry a request alphabet). Throws on violation.
void validate_input(const OnlineProblem& problem, const InputSequence& input);

} // namespace adv
