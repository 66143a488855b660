#include "advicelab/hsgg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace adv::hsgg {

void HSGGInstance::validate() const {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("HSGGInstance: k must be even and >= 2");
    if (n < k) throw std::invalid_argument("HSGGInstance: requires k <= n");
    if (static_cast<int>(sets.size()) != n || static_cast<int>(x.size()) != n)
        throw std::invalid_argument("HSGGInstance: wrong number of rounds");
    for (int i = 0; i < n; ++i) {
        const auto& a = sets[static_cast<std::size_t>(i)];
        if (static_cast<int>(a.size()) != k / 2)
            throw std::invalid_argument("HSGGInstance: |A_i| must be k/2");
        if (!std::is_sorted(a.begin(), a.end()))
            throw std::invalid_argument("HSGGInstance: sets must be ascending");
        for (int c : a)
            if (c < 1 || c > k) throw std::invalid_argument("HSGGInstance: character out of [k]");
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw std::invalid_argument("HSGGInstance: duplicate characters in a set");
        if (!std::binary_search(a.begin(), a.end(), x[static_cast<std::size_t>(i)]))
            throw std::invalid_argument("HSGGInstance: x_i must belong to A_i");
    }
}

bool hsgg_feasible(const HSGGInstance& instance, int round, std::span<const int> past_answers,
                   int answer) {
    const auto& a = instance.sets[static_cast<std::size_t>(round)];
    for (int t = 0; t < static_cast<int>(past_answers.size()); ++t) {
        if (past_answers[static_cast<std::size_t>(t)] != answer) continue;
        if (!std::binary_search(a.begin(), a.end(), instance.x[static_cast<std::size_t>(t)]))
            return false;
    }
    return true;
}

HsggAlgorithm replay_x_algorithm() {
    return [](const HSGGInstance& instance, int round, std::span<const int>) {
        return instance.x[static_cast<std::size_t>(round)];
    };
}

HsggAlgorithm first_feasible_algorithm() {
    return [](const HSGGInstance& instance, int round, std::span<const int> past) {
        for (int y : past)
            if (hsgg_feasible(instance, round, past, y)) return y;
        // fresh character
        std::set<int> used(past.begin(), past.end());
        for (int y = 1; y <= instance.n; ++y)
            if (!used.count(y)) return y;
        throw std::logic_error("first_feasible_algorithm: no characters left");
    };
}

HsggAlgorithm fresh_character_algorithm() {
    return [](const HSGGInstance& instance, int round, std::span<const int> past) {
        (void)instance;
        return round + 1; // never used before, hence always feasible
    };
}

int hsgg_cost(const std::vector<int>& answers) {
    std::set<int> distinct(answers.begin(), answers.end());
    return static_cast<int>(distinct.size());
}

int pair_cost(const HSGGInstance& instance, const std::vector<int>& answers) {
    std::set<std::pair<int, int>> pairs;
    int count = 0;
    for (std::size_t i = 0; i < answers.size(); ++i) {
        auto pr = std::make_pair(answers[i], instance.x[i]);
        if (pairs.insert(pr).second) ++count;
    }
    return count;
}

HsggRun hsgg_simulate(const HSGGInstance& instance, const HsggAlgorithm& alg) {
    instance.validate();
    HsggRun run;
    run.answers.reserve(static_cast<std::size_t>(instance.n));
    for (int i = 0; i < instance.n; ++i) {
        std::span<const int> past(run.answers.data(), run.answers.size());
        int y = alg(instance, i, past);
        if (y < 1 || y > instance.n)
            throw std::runtime_error("hsgg_simulate: answer out of [n] in round " +
                                     std::to_string(i + 1));
        if (!hsgg_feasible(instance, i, past, y))
            throw std::runtime_error(
                "hsgg_simulate: infeasible answer in round " + std::to_string(i + 1) +
                " (character " + std::to_string(y) +
                " was previously paired with a character outside A_i)");
        run.answers.push_back(y);
    }
    run.cost = hsgg_cost(run.answers);
    run.pair_cost = pair_cost(instance, run.answers);
    return run;
}

namespace {

void exact_opt_rec(const HSGGInstance& instance, int round, std::vector<int>& answers,
                   int used_count, int& best, std::uint64_t& nodes, std::uint64_t node_cap) {
    if (++nodes > node_cap) throw std::runtime_error("hsgg_exact_opt: node cap exceeded");
    if (used_count >= best) return;
    if (round == instance.n) {
        best = used_count;
        return;
    }
    std::span<const int> past(answers.data(), answers.size());
    // Reusing an old character keeps the cost; try those first.
    std::set<int> used(answers.begin(), answers.end());
    for (int y : used) {
        if (!hsgg_feasible(instance, round, past, y)) continue;
        answers.push_back(y);
        exact_opt_rec(instance, round + 1, answers, used_count, best, nodes, node_cap);
        answers.pop_back();
    }
    // One fresh character (all fresh characters are symmetric).
    for (int y = 1; y <= instance.n; ++y) {
        if (used.count(y)) continue;
        answers.push_back(y);
        exact_opt_rec(instance, round + 1, answers, used_count + 1, best, nodes, node_cap);
        answers.pop_back();
        break;
    }
}

} // namespace

int hsgg_exact_opt(const HSGGInstance& instance, std::uint64_t node_cap) {
    instance.validate();
    int best = instance.k; // replay-x witness
    std::vector<int> answers;
    std::uint64_t nodes = 0;
    exact_opt_rec(instance, 0, answers, 0, best, nodes, node_cap);
    return best;
}

std::uint64_t subset_count(int k, int m) {
    if (m < 0 || m > k) return 0;
    std::uint64_t c = 1;
    for (int i = 0; i < m; ++i) c = c * static_cast<std::uint64_t>(k - i) / static_cast<std::uint64_t>(i + 1);
    return c;
}

std::uint64_t subset_rank(int k, const std::vector<int>& subset) {
    // Lexicographic rank of an ascending subset of {1..k}.
    std::uint64_t rank = 0;
    int m = static_cast<int>(subset.size());
    int prev = 0;
    for (int i = 0; i < m; ++i) {
        for (int c = prev + 1; c < subset[static_cast<std::size_t>(i)]; ++c)
            rank += subset_count(k - c, m - i - 1);
        prev = subset[static_cast<std::size_t>(i)];
    }
    return rank;
}

std::vector<int> subset_unrank(int k, int m, std::uint64_t rank) {
    std::vector<int> subset;
    subset.reserve(static_cast<std::size_t>(m));
    int c = 1;
    for (int i = 0; i < m; ++i) {
        for (;; ++c) {
            std::uint64_t block = subset_count(k - c, m - i - 1);
            if (rank < block) break;
            rank -= block;
        }
        subset.push_back(c);
        ++c;
    }
    return subset;
}

HSGGInstance sample_hard_instance(int n, int k, RngStream& rng) {
    HSGGInstance inst;
    inst.n = n;
    inst.k = k;
    std::uint64_t count = subset_count(k, k / 2);
    inst.sets.reserve(static_cast<std::size_t>(n));
    inst.x.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto a = subset_unrank(k, k / 2, rng.next_below(count));
        inst.x.push_back(a[static_cast<std::size_t>(rng.next_below(a.size()))]);
        inst.sets.push_back(std::move(a));
    }
    return inst;
}

InputSequence hsgg_input(const HSGGInstance& instance) {
    InputSequence in;
    in.initial_state = 0;
    in.requests.reserve(static_cast<std::size_t>(2 * instance.n));
    for (int i = 0; i < instance.n; ++i) {
        in.requests.push_back(static_cast<Token>(subset_rank(instance.k, instance.sets[static_cast<std::size_t>(i)])));
        in.requests.push_back(instance.x[static_cast<std::size_t>(i)]);
    }
    return in;
}

OnlineProblem hsgg_problem(int n, int k) {
    if (k < 2 || k % 2 != 0 || n < k) throw std::invalid_argument("hsgg_problem: bad (n, k)");
    OnlineProblem p;
    p.name = "hsgg_n" + std::to_string(n) + "_k" + std::to_string(k);
    p.objective = Objective::min;
    p.initial_states = {0};
    p.reveal_before_answer = true;

    p.answer_alphabet = [n, k](Token, std::span<const Token> past_requests,
                               std::span<const Token> past_answers, Token request) {
        bool even_step = past_requests.size() % 2 == 0;
        if (!even_step) return std::vector<Token>{0}; // feedback step, dummy answer
        auto a = subset_unrank(k, k / 2, static_cast<std::uint64_t>(request));
        std::vector<Token> feasible;
        for (int y = 1; y <= n; ++y) {
            bool ok = true;
            for (std::size_t t = 0; ok && 2 * t < past_answers.size(); ++t) {
                if (past_answers[2 * t] != y) continue;
                Token xt = past_requests[2 * t + 1];
                ok = std::binary_search(a.begin(), a.end(), xt);
            }
            if (ok) feasible.push_back(y);
        }
        return feasible;
    };
    p.step_cost = [](Token, std::span<const Token> past_requests, std::span<const Token> past_answers,
                     Token, Token answer) {
        if (past_requests.size() % 2 != 0) return 0.0; // feedback step
        for (std::size_t t = 0; 2 * t < past_answers.size(); ++t)
            if (past_answers[2 * t] == answer) return 0.0;
        return 1.0; // fresh character
    };
    return p;
}

RoundDistribution hsgg_hard_distribution(int n, int k) {
    if (k < 2 || k % 2 != 0 || n < k) throw std::invalid_argument("hsgg_hard_distribution: bad (n, k)");
    std::uint64_t count = subset_count(k, k / 2);

    RoundDistribution dist;
    dist.rounds = n;
    BlockDistribution round;
    std::vector<double> probs;
    for (std::uint64_t rank = 0; rank < count; ++rank) {
        auto a = subset_unrank(k, k / 2, rank);
        for (int x : a) {
            round.support.push_back({static_cast<Token>(rank), x});
            probs.push_back(1.0 / (static_cast<double>(count) * static_cast<double>(k / 2)));
        }
    }
    round.probs = info::FiniteDistribution(std::move(probs));
    dist.per_round.assign(static_cast<std::size_t>(n), round);
    dist.assemble = [](const std::vector<Block>& blocks) {
        InputSequence in;
        in.initial_state = 0;
        for (const auto& b : blocks) in.requests.insert(in.requests.end(), b.begin(), b.end());
        return in;
    };
    dist.round_cost = [n, k](int round_idx, const std::vector<Block>& blocks,
                             const std::vector<Token>& answers) {
        // New-pair indicator for round round_idx. Answers sit at even steps.
        int y = answers[static_cast<std::size_t>(2 * round_idx)];
        int x = blocks[static_cast<std::size_t>(round_idx)][1];
        for (int t = 0; t < round_idx; ++t) {
            int yt = answers[static_cast<std::size_t>(2 * t)];
            int xt = blocks[static_cast<std::size_t>(t)][1];
            if (yt == y && xt == x) return 0.0;
        }
        (void)n;
        (void)k;
        return 1.0;
    };
    return dist;
}

} // namespace adv::hsgg
