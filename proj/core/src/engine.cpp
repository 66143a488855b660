#include "advicelab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace adv {

void validate_input(const OnlineProblem& problem, const InputSequence& input) {
    bool known_initial = std::find(problem.initial_states.begin(), problem.initial_states.end(),
                                   input.initial_state) != problem.initial_states.end();
    if (!known_initial)
        throw std::invalid_argument(problem.name + ": unknown initial state " +
                                    std::to_string(input.initial_state));
    if (!problem.request_alphabet) return;
    for (std::size_t i = 0; i < input.requests.size(); ++i) {
        std::span<const Token> past(input.requests.data(), i);
        auto valid = problem.request_alphabet(input.initial_state, past);
        if (std::find(valid.begin(), valid.end(), input.requests[i]) == valid.end())
            throw std::invalid_argument(problem.name + ": invalid request at position " +
                                        std::to_string(i));
    }
}

Token DecisionTable::lookup(const std::vector<Token>& observation) const {
    auto it = entries.find(observation);
    if (it == entries.end())
        throw std::out_of_range("DecisionTable: unmapped observation (size " +
                                std::to_string(observation.size()) + ")");
    return it->second;
}

std::vector<Token> observation_key(const OnlineProblem& problem, Token initial_state,
                                   std::span<const Token> past_requests,
                                   std::optional<Token> current_request) {
    std::vector<Token> key;
    key.reserve(past_requests.size() + 2);
    key.push_back(initial_state);
    key.insert(key.end(), past_requests.begin(), past_requests.end());
    if (problem.reveal_before_answer && current_request) key.push_back(*current_request);
    return key;
}

DeterministicAlgorithm table_algorithm(const OnlineProblem& problem, DecisionTable table,
                                       std::string name) {
    auto shared = std::make_shared<DecisionTable>(std::move(table));
    bool reveal = problem.reveal_before_answer;
    DeterministicAlgorithm alg;
    alg.name = std::move(name);
    alg.table = *shared;
    alg.decide = [shared, reveal](const DecideContext& ctx) {
        std::vector<Token> key;
        key.reserve(ctx.past_requests.size() + 2);
        key.push_back(ctx.initial_state);
        key.insert(key.end(), ctx.past_requests.begin(), ctx.past_requests.end());
        if (reveal && ctx.request) key.push_back(*ctx.request);
        return shared->lookup(key);
    };
    return alg;
}

DeterministicAlgorithm constant_algorithm(Token answer, std::string name) {
    DeterministicAlgorithm alg;
    alg.name = name.empty() ? ("const_" + std::to_string(answer)) : std::move(name);
    alg.decide = [answer](const DecideContext&) { return answer; };
    return alg;
}

AdviceAlgorithm without_advice(DeterministicAlgorithm alg) {
    AdviceAlgorithm out;
    out.name = alg.name;
    out.advice_length = [](std::size_t) { return 0; };
    out.oracle = [](const InputSequence&) { return BitString(); };
    out.body = std::move(alg);
    out.oracle_is_optimal = true;
    return out;
}

void RandomizedAlgorithm::validate() const {
    if (support.empty()) throw std::invalid_argument("RandomizedAlgorithm: empty support");
    double sum = 0.0;
    for (const auto& [alg, p] : support) {
        if (p < 0.0) throw std::invalid_argument("RandomizedAlgorithm: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("RandomizedAlgorithm: probabilities sum to " +
                                    std::to_string(sum));
}

int RandomizedAlgorithm::advice_length(std::size_t n) const {
    int b = 0;
    for (const auto& [alg, p] : support) b = std::max(b, alg.advice_length(n));
    return b;
}

RandomizedAlgorithm uniform_mixture(std::vector<AdviceAlgorithm> algs, std::string name) {
    if (algs.empty()) throw std::invalid_argument("uniform_mixture: no algorithms");
    RandomizedAlgorithm out;
    out.name = std::move(name);
    double p = 1.0 / static_cast<double>(algs.size());
    out.support.reserve(algs.size());
    for (auto& a : algs) out.support.emplace_back(std::move(a), p);
    return out;
}

std::vector<Block> RoundDistribution::sample_blocks(RngStream& rng) const {
    std::vector<Block> blocks;
    blocks.reserve(per_round.size());
    for (const auto& pr : per_round) blocks.push_back(pr.sample(rng));
    return blocks;
}

std::uint64_t RoundDistribution::support_size(std::uint64_t cap) const {
    std::uint64_t total = 1;
    for (const auto& pr : per_round) {
        total *= pr.support.size();
        if (total > cap) return cap + 1;
    }
    return total;
}

void RoundDistribution::for_each_tuple(
    const std::function<void(const std::vector<Block>&, double)>& fn) const {
    std::vector<Block> blocks(per_round.size());
    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double prob) {
        if (i == per_round.size()) {
            fn(blocks, prob);
            return;
        }
        for (std::size_t j = 0; j < per_round[i].support.size(); ++j) {
            blocks[i] = per_round[i].support[j];
            rec(i + 1, prob * per_round[i].probs.mass(j));
        }
    };
    rec(0, 1.0);
}

InputDistribution RoundDistribution::flatten(std::uint64_t cap) const {
    if (support_size(cap) > cap)
        throw std::runtime_error("RoundDistribution: support exceeds the enumeration cap");
    InputDistribution out;
    std::vector<double> probs;
    for_each_tuple([&](const std::vector<Block>& blocks, double p) {
        out.support.push_back(assemble(blocks));
        probs.push_back(p);
    });
    out.probs = info::FiniteDistribution(std::move(probs));
    return out;
}

RunTrace run(const OnlineProblem& problem, const DeterministicAlgorithm& alg,
             const InputSequence& input, const BitString& advice) {
    validate_input(problem, input);
    RunTrace trace;
    trace.step_costs.reserve(input.requests.size());
    trace.answers.reserve(input.requests.size());
    for (std::size_t i = 0; i < input.requests.size(); ++i) {
        std::span<const Token> past_requests(input.requests.data(), i);
        std::span<const Token> past_answers(trace.answers.data(), trace.answers.size());
        Token request = input.requests[i];

        DecideContext ctx;
        ctx.initial_state = input.initial_state;
        ctx.past_requests = past_requests;
        ctx.past_answers = past_answers;
        ctx.request = problem.reveal_before_answer ? std::optional<Token>(request) : std::nullopt;
        ctx.advice = &advice;
        ctx.step = i;

        Token answer = alg.decide(ctx);

        auto valid = problem.answer_alphabet(input.initial_state, past_requests, past_answers, request);
        if (valid.empty())
            throw std::logic_error(problem.name + ": empty answer alphabet at step " +
                                   std::to_string(i));
        if (std::find(valid.begin(), valid.end(), answer) == valid.end())
            throw std::runtime_error(problem.name + ": algorithm '" + alg.name +
                                     "' returned invalid answer " + std::to_string(answer) +
                                     " at step " + std::to_string(i));

        double cost = problem.step_cost(input.initial_state, past_requests, past_answers, request,
                                        answer);
        if (cost < 0.0)
            throw std::logic_error(problem.name + ": negative step cost at step " +
                                   std::to_string(i));
        trace.answers.push_back(answer);
        trace.step_costs.push_back(cost);
    }
    trace.total = pairwise_sum(trace.step_costs);
    return trace;
}

RunTrace run_advice(const OnlineProblem& problem, const AdviceAlgorithm& alg,
                    const InputSequence& input) {
    BitString advice = alg.oracle(input);
    int expected = alg.advice_length(input.length());
    if (static_cast<int>(advice.size()) != expected)
        throw std::runtime_error(problem.name + ": advice length mismatch for '" + alg.name +
                                 "': oracle wrote " + std::to_string(advice.size()) +
                                 " bits, contract is " + std::to_string(expected));
    return run(problem, alg.body, input, advice);
}

namespace {

ExpectedCost exact_cost(const OnlineProblem& problem, const AdviceAlgorithm& alg,
                        const InputDistribution& dist) {
    std::vector<double> terms(dist.support.size());
    for (std::size_t i = 0; i < dist.support.size(); ++i)
        terms[i] = dist.probs.mass(i) * run_advice(problem, alg, dist.support[i]).total;
    ExpectedCost out;
    out.value = pairwise_sum(terms);
    return out;
}

ExpectedCost monte_carlo_cost(const OnlineProblem& problem, const RandomizedAlgorithm& alg,
                              const InputDistribution& dist, std::size_t trials,
                              std::uint64_t seed) {
    std::vector<double> samples(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng(seed, t);
        const InputSequence& input = dist.support.at(rng.next_index(dist.probs.masses()));
        std::size_t k = 0;
        if (alg.support.size() > 1) {
            std::vector<double> probs;
            probs.reserve(alg.support.size());
            for (const auto& [a, p] : alg.support) probs.push_back(p);
            k = rng.next_index(probs);
        }
        samples[t] = run_advice(problem, alg.support[k].first, input).total;
    }
    auto stats = mean_with_error(samples);
    ExpectedCost out;
    out.value = stats.mean;
    out.std_error = stats.std_error;
    out.trials = trials;
    out.exact = false;
    return out;
}

} // namespace

ExpectedCost expected_cost(const OnlineProblem& problem, const AdviceAlgorithm& alg,
                           const InputDistribution& dist, CostMode mode, std::size_t trials,
                           std::uint64_t seed, const Caps& caps) {
    if (mode == CostMode::exact) {
        if (dist.support.size() > caps.max_exact_support)
            throw std::runtime_error(
                "expected_cost: support exceeds the exact-mode cap; use monte_carlo");
        return exact_cost(problem, alg, dist);
    }
    RandomizedAlgorithm single;
    single.support.emplace_back(alg, 1.0);
    return monte_carlo_cost(problem, single, dist, trials, seed);
}

ExpectedCost expected_cost(const OnlineProblem& problem, const RandomizedAlgorithm& alg,
                           const InputDistribution& dist, CostMode mode, std::size_t trials,
                           std::uint64_t seed, const Caps& caps) {
    alg.validate();
    if (mode == CostMode::exact) {
        if (dist.support.size() * alg.support.size() > caps.max_exact_support)
            throw std::runtime_error(
                "expected_cost: support exceeds the exact-mode cap; use monte_carlo");
        std::vector<double> terms(alg.support.size());
        for (std::size_t j = 0; j < alg.support.size(); ++j)
            terms[j] = alg.support[j].second * exact_cost(problem, alg.support[j].first, dist).value;
        ExpectedCost out;
        out.value = pairwise_sum(terms);
        return out;
    }
    return monte_carlo_cost(problem, alg, dist, trials, seed);
}

ExpectedCost expected_cost(const OnlineProblem& problem, const AdviceAlgorithm& alg,
                           const RoundDistribution& dist, CostMode mode, std::size_t trials,
                           std::uint64_t seed, const Caps& caps) {
    if (mode == CostMode::exact)
        return expected_cost(problem, alg, dist.flatten(caps.max_exact_support), mode, trials,
                             seed, caps);
    std::vector<double> samples(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng(seed, t);
        InputSequence input = dist.assemble(dist.sample_blocks(rng));
        samples[t] = run_advice(problem, alg, input).total;
    }
    auto stats = mean_with_error(samples);
    return ExpectedCost{stats.mean, stats.std_error, trials, false};
}

ExpectedCost expected_cost(const OnlineProblem& problem, const RandomizedAlgorithm& alg,
                           const RoundDistribution& dist, CostMode mode, std::size_t trials,
                           std::uint64_t seed, const Caps& caps) {
    if (mode == CostMode::exact)
        return expected_cost(problem, alg, dist.flatten(caps.max_exact_support), mode, trials,
                             seed, caps);
    alg.validate();
    std::vector<double> samples(trials);
    std::vector<double> probs;
    probs.reserve(alg.support.size());
    for (const auto& [a, p] : alg.support) probs.push_back(p);
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng(seed, t);
        InputSequence input = dist.assemble(dist.sample_blocks(rng));
        std::size_t k = rng.next_index(probs);
        samples[t] = run_advice(problem, alg.support[k].first, input).total;
    }
    auto stats = mean_with_error(samples);
    return ExpectedCost{stats.mean, stats.std_error, trials, false};
}

std::vector<double> expected_round_costs(const OnlineProblem& problem,
                                         const DeterministicAlgorithm& alg,
                                         const RoundDistribution& dist, const Caps& caps) {
    if (dist.support_size(caps.max_exact_support) > caps.max_exact_support)
        throw std::runtime_error("expected_round_costs: support exceeds the enumeration cap");
    std::vector<std::vector<double>> terms(static_cast<std::size_t>(dist.rounds));
    dist.for_each_tuple([&](const std::vector<Block>& blocks, double p) {
        InputSequence input = dist.assemble(blocks);
        RunTrace trace = run(problem, alg, input);
        for (int r = 0; r < dist.rounds; ++r)
            terms[static_cast<std::size_t>(r)].push_back(p * dist.round_cost(r, blocks, trace.answers));
    });
    std::vector<double> out(static_cast<std::size_t>(dist.rounds));
    for (int r = 0; r < dist.rounds; ++r)
        out[static_cast<std::size_t>(r)] = pairwise_sum(terms[static_cast<std::size_t>(r)]);
    return out;
}

std::vector<DeterministicAlgorithm> split_advice(const AdviceAlgorithm& alg, std::size_t n,
                                                 const Caps& caps) {
    int b = alg.advice_length(n);
    if (b < 0) throw std::invalid_argument("split_advice: negative advice length");
    if (b > caps.max_advice_bits)
        throw std::runtime_error("split_advice: b = " + std::to_string(b) +
                                 " exceeds the advice cap " + std::to_string(caps.max_advice_bits));
    std::vector<DeterministicAlgorithm> members;
    members.reserve(std::size_t{1} << b);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << b); ++v) {
        auto bits = std::make_shared<const BitString>(BitString::from_uint(v, b));
        auto inner = alg.body.decide;
        DeterministicAlgorithm m;
        m.name = alg.name + "[" + bits->to_string() + "]";
        m.decide = [inner, bits](const DecideContext& ctx) {
            DecideContext fixed = ctx;
            fixed.advice = bits.get();
            return inner(fixed);
        };
        members.push_back(std::move(m));
    }
    return members;
}

InputSequence repeat_concat(const std::vector<InputSequence>& blocks, ConcatMode mode) {
    if (blocks.empty()) throw std::invalid_argument("repeat_concat: no blocks");
    InputSequence out;
    out.initial_state = blocks.front().initial_state;
    for (const auto& block : blocks) {
        if (block.initial_state != out.initial_state)
            throw std::invalid_argument("repeat_concat: blocks have mixed initial states");
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (mode == ConcatMode::marked && i > 0) out.round_starts.push_back(out.requests.size());
        out.requests.insert(out.requests.end(), blocks[i].requests.begin(),
                            blocks[i].requests.end());
    }
    return out;
}

int derandomize_min_family_size(double input_count, double eps) {
    if (!(input_count >= 1.0)) throw std::domain_error("derandomize_min: I(n) must be >= 1");
    if (!(eps > 0.0)) throw std::domain_error("derandomize_min: eps must be > 0");
    double ratio = std::log2(input_count) / std::log2(1.0 + eps);
    int t = static_cast<int>(std::floor(ratio)) + 1; // smallest integer strictly above
    return std::max(t, 1);
}

int derandomize_max_family_size(double input_count, double strict_ratio, double eps) {
    if (!(input_count >= 1.0)) throw std::domain_error("derandomize_max: I(n) must be >= 1");
    if (!(strict_ratio >= 1.0)) throw std::domain_error("derandomize_max: c(n) must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("derandomize_max: eps must be in (0,1)");
    double threshold = std::log2(input_count) * ((strict_ratio - 1.0) / eps + 1.0);
    int t = static_cast<int>(std::floor(threshold)) + 1;
    return std::max(t, 1);
}

namespace {

struct SampledFamily {
    std::vector<AdviceAlgorithm> members;
    std::vector<std::string> names;
};

SampledFamily sample_family(const RandomizedAlgorithm& rand, int t, RngStream& rng) {
    std::vector<double> probs;
    probs.reserve(rand.support.size());
    for (const auto& [a, p] : rand.support) probs.push_back(p);
    SampledFamily fam;
    fam.members.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        std::size_t k = rng.next_index(probs);
        fam.members.push_back(rand.support[k].first);
        fam.names.push_back(rand.support[k].first.name);
    }
    return fam;
}

AdviceAlgorithm index_family_algorithm(std::string name, std::vector<AdviceAlgorithm> members) {
    auto shared = std::make_shared<const std::vector<AdviceAlgorithm>>(std::move(members));
    int idx_bits = bits_for_count(shared->size());

    AdviceAlgorithm out;
    out.name = std::move(name);
    out.oracle_is_optimal = true;
    for (const auto& m : *shared) out.oracle_is_optimal = out.oracle_is_optimal && m.oracle_is_optimal;
    out.advice_length = [shared, idx_bits](std::size_t n) {
        int inner = 0;
        for (const auto& m : *shared) inner = std::max(inner, m.advice_length(n));
        return idx_bits + inner;
    };
    out.oracle = nullptr; // bound by the caller, which knows the problem
    out.body.name = out.name + "_body";
    out.body.decide = [shared, idx_bits](const DecideContext& ctx) {
        if (!ctx.advice || static_cast<int>(ctx.advice->size()) < idx_bits)
            throw std::runtime_error("derandomized family: advice too short for the index");
        auto k = static_cast<std::size_t>(ctx.advice->to_uint(0, idx_bits));
        if (k >= shared->size()) k = shared->size() - 1; // unused index values
        const AdviceAlgorithm& member = (*shared)[k];
        BitString inner = ctx.advice->slice(static_cast<std::size_t>(idx_bits),
                                            ctx.advice->size() - static_cast<std::size_t>(idx_bits));
        DecideContext forwarded = ctx;
        forwarded.advice = &inner;
        return member.body.decide(forwarded);
    };
    return out;
}

} // namespace

DerandomizeResult derandomize_min(const OnlineProblem& problem, const RandomizedAlgorithm& rand,
                                  std::size_t n, double input_count, double eps,
                                  std::uint64_t seed, int retry_budget, const Caps& caps) {
    if (problem.objective != Objective::min)
        throw std::invalid_argument("derandomize_min: problem objective must be min");
    if (!problem.enumerate_inputs)
        throw std::invalid_argument("derandomize_min: problem is not enumerable");
    rand.validate();

    auto inputs = problem.enumerate_inputs(n);
    if (inputs.size() > caps.max_enum_inputs)
        throw std::runtime_error("derandomize_min: input enumeration exceeds the cap");

    // Exact expectation of the randomized algorithm per input.
    std::vector<double> expect(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        std::vector<double> terms(rand.support.size());
        for (std::size_t j = 0; j < rand.support.size(); ++j)
            terms[j] = rand.support[j].second *
                       run_advice(problem, rand.support[j].first, inputs[i]).total;
        expect[i] = pairwise_sum(terms);
    }

    int t = derandomize_min_family_size(input_count, eps);
    double worst_ratio = 0.0;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        RngStream rng(seed, static_cast<std::uint64_t>(attempt));
        SampledFamily fam = sample_family(rand, t, rng);

        bool covered = true;
        double attempt_worst = 0.0;
        std::vector<std::size_t> best_index(inputs.size(), 0);
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < fam.members.size(); ++j) {
                double c = run_advice(problem, fam.members[j], inputs[i]).total;
                if (c < best) {
                    best = c;
                    best_index[i] = j;
                }
            }
            double allowed = (1.0 + eps) * expect[i];
            if (best > allowed + 1e-12) covered = false;
            double ratio = expect[i] > 0.0 ? best / expect[i]
                                           : (best > 1e-12 ? std::numeric_limits<double>::infinity()
                                                           : 1.0);
            attempt_worst = std::max(attempt_worst, ratio);
        }
        worst_ratio = std::max(worst_ratio, attempt_worst);
        if (!covered) continue;

        AdviceAlgorithm combined = index_family_algorithm(
            "derand_min(" + rand.name + ")", fam.members);
        auto members = std::make_shared<const std::vector<AdviceAlgorithm>>(fam.members);
        int idx_bits = bits_for_count(members->size());
        auto problem_ptr = &problem;
        combined.oracle = [members, idx_bits, problem_ptr](const InputSequence& input) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = 0;
            for (std::size_t j = 0; j < members->size(); ++j) {
                double c = run_advice(*problem_ptr, (*members)[j], input).total;
                if (c < best) {
                    best = c;
                    best_j = j;
                }
            }
            BitString advice = BitString::from_uint(best_j, idx_bits);
            BitString inner = (*members)[best_j].oracle(input);
            int inner_width = 0;
            for (const auto& m : *members)
                inner_width = std::max(inner_width, m.advice_length(input.length()));
            // Pad so every member body reads a fixed-width inner tape.
            while (static_cast<int>(inner.size()) < inner_width) inner.push_back(false);
            advice.append(inner);
            return advice;
        };

        DerandomizeResult out;
        out.algorithm = std::move(combined);
        out.report.t = t;
        out.report.tries = attempt + 1;
        out.report.worst_ratio = attempt_worst;
        out.report.member_names = fam.names;
        return out;
    }
    throw std::runtime_error("derandomize_min: retry budget exhausted; worst coverage ratio " +
                             std::to_string(worst_ratio) + " vs allowed " +
                             std::to_string(1.0 + eps));
}

DerandomizeResult derandomize_max(const OnlineProblem& problem, const RandomizedAlgorithm& rand,
                                  std::size_t n, double input_count, double strict_ratio,
                                  double eps, std::uint64_t seed,
                                  const std::function<double(const InputSequence&)>& opt_value,
                                  int retry_budget, const Caps& caps) {
    if (problem.objective != Objective::max)
        throw std::invalid_argument("derandomize_max: problem objective must be max");
    if (!problem.enumerate_inputs)
        throw std::invalid_argument("derandomize_max: problem is not enumerable");
    rand.validate();

    auto inputs = problem.enumerate_inputs(n);
    if (inputs.size() > caps.max_enum_inputs)
        throw std::runtime_error("derandomize_max: input enumeration exceeds the cap");

    std::vector<double> expect(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        std::vector<double> terms(rand.support.size());
        for (std::size_t j = 0; j < rand.support.size(); ++j)
            terms[j] = rand.support[j].second *
                       run_advice(problem, rand.support[j].first, inputs[i]).total;
        expect[i] = pairwise_sum(terms);
        double opt = opt_value(inputs[i]);
        if (opt > strict_ratio * expect[i] + 1e-12)
            throw std::runtime_error(
                "derandomize_max: strict-ratio precondition fails on input index " +
                std::to_string(i) + " (OPT " + std::to_string(opt) + " > c*E " +
                std::to_string(strict_ratio * expect[i]) + ")");
    }

    int t = derandomize_max_family_size(input_count, strict_ratio, eps);
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        RngStream rng(seed, static_cast<std::uint64_t>(attempt));
        SampledFamily fam = sample_family(rand, t, rng);

        bool covered = true;
        double attempt_worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& member : fam.members)
                best = std::max(best, run_advice(problem, member, inputs[i]).total);
            double required = (1.0 - eps) * expect[i];
            if (best < required - 1e-12) covered = false;
            double ratio = expect[i] > 0.0 ? best / expect[i] : 1.0;
            attempt_worst = std::min(attempt_worst, ratio);
        }
        worst_ratio = std::min(worst_ratio, attempt_worst);
        if (!covered) continue;

        AdviceAlgorithm combined = index_family_algorithm(
            "derand_max(" + rand.name + ")", fam.members);
        auto members = std::make_shared<const std::vector<AdviceAlgorithm>>(fam.members);
        int idx_bits = bits_for_count(members->size());
        auto problem_ptr = &problem;
        combined.oracle = [members, idx_bits, problem_ptr](const InputSequence& input) {
            double best = -std::numeric_limits<double>::infinity();
            std::size_t best_j = 0;
            for (std::size_t j = 0; j < members->size(); ++j) {
                double c = run_advice(*problem_ptr, (*members)[j], input).total;
                if (c > best) {
                    best = c;
                    best_j = j;
                }
            }
            BitString advice = BitString::from_uint(best_j, idx_bits);
            BitString inner = (*members)[best_j].oracle(input);
            int inner_width = 0;
            for (const auto& m : *members)
                inner_width = std::max(inner_width, m.advice_length(input.length()));
            while (static_cast<int>(inner.size()) < inner_width) inner.push_back(false);
            advice.append(inner);
            return advice;
        };

        DerandomizeResult out;
        out.algorithm = std::move(combined);
        out.report.t = t;
        out.report.tries = attempt + 1;
        out.report.worst_ratio = attempt_worst;
        out.report.member_names = fam.names;
        return out;
    }
    throw std::runtime_error("derandomize_max: retry budget exhausted; worst coverage ratio " +
                             std::to_string(worst_ratio) + " vs required " +
                             std::to_string(1.0 - eps));
}

} // namespace adv
