#include <doctest.h>

#include <cmath>

#include "advicelab/engine.hpp"
#include "advicelab/oracle.hpp"
#include "advicelab/serialization.hpp"
#include "advicelab/tasksystems.hpp"

using namespace adv;
using namespace adv::tasksys;

namespace {

/// Uniform metric on `n` states with task costs in {0, 1, inf}.
TaskSystem uniform_mts(int n) {
    TaskSystem ts;
    ts.name = "uniform_mts";
    ts.num_states = n;
    ts.dist.assign(static_cast<std::size_t>(n) * n, 1.0);
    for (int s = 0; s < n; ++s) ts.dist[static_cast<std::size_t>(s * n + s)] = 0.0;
    // one task per state: free there, cost 1 elsewhere; plus a blocking task
    for (int s = 0; s < n; ++s) {
        Task t(static_cast<std::size_t>(n), 1.0);
        t[static_cast<std::size_t>(s)] = 0.0;
        ts.tasks.push_back(t);
    }
    Task blocked(static_cast<std::size_t>(n), kInf);
    blocked[0] = 1.0;
    ts.tasks.push_back(blocked);
    return ts;
}

TaskSystem random_lts(RngStream& rng, int n, int num_tasks, bool allow_inf = true) {
    TaskSystem ts;
    ts.name = "random_lts";
    ts.num_states = n;
    ts.dist.assign(static_cast<std::size_t>(n) * n, 0.0);
    // a metric from random point positions on a line
    std::vector<double> pos(static_cast<std::size_t>(n));
    for (auto& p : pos) p = rng.next_double() * 3.0 + 0.1;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            ts.dist[static_cast<std::size_t>(a * n + b)] =
                a == b ? 0.0 : std::abs(pos[static_cast<std::size_t>(a)] - pos[static_cast<std::size_t>(b)]) + 0.25;
    for (int t = 0; t < num_tasks; ++t) {
        Task task(static_cast<std::size_t>(n));
        for (auto& v : task) {
            double r = rng.next_double();
            v = r < 0.3 ? 0.0 : (r < 0.8 || !allow_inf ? std::round(10.0 * rng.next_double()) / 10.0
                                                       : kInf);
        }
        bool finite = false;
        for (double v : task) finite = finite || !std::isinf(v);
        if (!finite) task[0] = 0.5;
        ts.tasks.push_back(task);
    }
    return ts;
}

InputSequence random_input(RngStream& rng, const TaskSystem& ts, int n) {
    std::vector<Token> seq(static_cast<std::size_t>(n));
    for (auto& t : seq) t = static_cast<Token>(rng.next_below(ts.tasks.size()));
    return ts_input(0, seq);
}

} // namespace

TEST_CASE("min and max cost of the uniform system") {
    auto ts = uniform_mts(4);
    CHECK(max_cost(ts) == doctest::Approx(2.0));
    bool degenerate = false;
    CHECK(min_cost(ts, &degenerate) == doctest::Approx(1.0));
    CHECK_FALSE(degenerate);
}

TEST_CASE("paging as a lazy task system") {
    auto paging = paging_as_lts(2, 3);
    CHECK(paging.ts.num_states == 3);
    auto profile = cost_profile(paging.ts);
    CHECK(profile.min_cost == doctest::Approx(1.0));
    CHECK(profile.max_cost == doctest::Approx(2.0));
    CHECK_FALSE(profile.degenerate);
    CHECK(is_lazy_ts(paging.ts));
    CHECK_THROWS(paging_as_lts(3, 3));

    auto tiny = paging_as_lts(1, 2);
    CHECK(tiny.ts.num_states == 2);
    CHECK(tiny.ts.d(0, 1) == doctest::Approx(1.0));
    CHECK(tiny.ts.d(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("degenerate single-state system is flagged") {
    TaskSystem ts;
    ts.num_states = 1;
    ts.dist = {0.0};
    ts.tasks = {Task{0.0}};
    auto profile = cost_profile(ts);
    CHECK(profile.degenerate);
    CHECK(profile.min_cost == 0.0);
}

TEST_CASE("laziness check flags a triangle violation") {
    TaskSystem ts;
    ts.num_states = 3;
    ts.dist = {0, 1, 5,
               1, 0, 1,
               5, 1, 0}; // d(0,2) > d(0,1) + d(1,2)
    ts.tasks = {Task{0.0, 0.0, 0.0}};
    CHECK_FALSE(is_lazy_ts(ts));
    ts.dist = {0, 1, 2, 1, 0, 1, 2, 1, 0};
    CHECK(is_lazy_ts(ts));
    ts.dist = {0, 0, 1, 1, 0, 1, 1, 1, 0}; // zero off the diagonal
    CHECK_FALSE(is_lazy_ts(ts));
}

TEST_CASE("lazy wrapper never costs more on a lazy system") {
    RngStream rng(41, 0);
    for (int it = 0; it < 100; ++it) {
        auto ts = random_lts(rng, 3, 3);
        REQUIRE(is_lazy_ts(ts));
        auto p = ts_problem(ts);
        DeterministicAlgorithm wanderer;
        wanderer.name = "wanderer";
        wanderer.decide = [&ts](const DecideContext& ctx) {
            // hops to the cheapest processing cost, ignoring distances
            Token best = 0;
            double best_cost = kInf;
            for (int s = 0; s < ts.num_states; ++s) {
                double c = ts.task_cost(*ctx.request, s);
                if (c < best_cost) {
                    best_cost = c;
                    best = s;
                }
            }
            return best;
        };
        auto lazy = make_lazy(ts, wanderer);
        auto input = random_input(rng, ts, 8);
        CHECK(run(p, lazy, input).total <= run(p, wanderer, input).total + 1e-9);
    }
}

TEST_CASE("offline optimum basics") {
    auto ts = uniform_mts(3);
    CHECK(opt_offline(ts, ts_input(0, {})) == doctest::Approx(0.0));
    // single task: min over states of d(s0,s) + t(s)
    CHECK(opt_offline(ts, ts_input(0, {1})) == doctest::Approx(1.0));
    CHECK(opt_offline(ts, ts_input(1, {1})) == doctest::Approx(0.0));
}

TEST_CASE("offline optimum equals exhaustive search") {
    RngStream rng(42, 0);
    for (int it = 0; it < 60; ++it) {
        auto ts = random_lts(rng, 4, 3);
        auto input = random_input(rng, ts, 10);
        CHECK(opt_offline(ts, input) == doctest::Approx(opt_exhaustive(ts, input)).epsilon(1e-9));
    }
}

TEST_CASE("paging optimum equals the eviction oracle") {
    RngStream rng(43, 0);
    for (int it = 0; it < 100; ++it) {
        int k = 1 + static_cast<int>(rng.next_below(3));
        int pages = k + 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(5 - k)));
        auto paging = paging_as_lts(k, pages);
        int n = 1 + static_cast<int>(rng.next_below(12));
        std::vector<int> seq(static_cast<std::size_t>(n));
        std::vector<Token> tasks(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            seq[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(pages));
            tasks[static_cast<std::size_t>(i)] = seq[static_cast<std::size_t>(i)];
        }
        double lts_opt = opt_offline(paging.ts, ts_input(paging.initial_state(), tasks));
        CHECK(lts_opt == doctest::Approx(double(oracle::belady(k, seq))).epsilon(1e-9));
    }
}

TEST_CASE("ssm2 is a generalized task system with the ski-rental shape") {
    auto ts = ssm2(1.0, 5.0);
    CHECK(max_cost(ts) == doctest::Approx(6.0)); // wake + run
    bool degenerate = false;
    CHECK(min_cost(ts, &degenerate) == doctest::Approx(0.0)); // d(awake, sleep) = 0
    CHECK_FALSE(std::isinf(ts.task_cost(kSsmBusy, 0)));
    CHECK(std::isinf(ts.task_cost(kSsmBusy, 1)));
    CHECK_FALSE(is_lazy_ts(ts));
    // busy streaks force waking
    auto p = ts_problem(ts);
    auto sleeper = constant_algorithm(1, "sleeper");
    CHECK_THROWS(run(p, sleeper, ts_input(1, {kSsmBusy})));
    CHECK(opt_offline(ts, ts_input(1, {kSsmIdle, kSsmBusy, kSsmIdle})) == doctest::Approx(6.0));
}

TEST_CASE("concatenation overhead is at most the max cost") {
    RngStream rng(44, 0);
    for (int it = 0; it < 60; ++it) {
        auto ts = random_lts(rng, 3, 3);
        auto a = random_input(rng, ts, 5);
        auto b = random_input(rng, ts, 5);
        auto joined = repeat_concat({a, b});
        double delta = max_cost(ts);
        CHECK(opt_offline(ts, joined) <=
              opt_offline(ts, a) + opt_offline(ts, b) + delta + 1e-9);
    }
}

TEST_CASE("repeated semantics stay within Delta per round of the plain run") {
    RngStream rng(45, 0);
    for (int it = 0; it < 60; ++it) {
        auto ts = random_lts(rng, 3, 3);
        auto p = ts_problem(ts);
        int rounds = 2 + static_cast<int>(rng.next_below(3));
        std::vector<InputSequence> blocks;
        for (int r = 0; r < rounds; ++r) blocks.push_back(random_input(rng, ts, 4));
        auto plain = repeat_concat(blocks, ConcatMode::plain);
        auto marked = repeat_concat(blocks, ConcatMode::marked);

        DeterministicAlgorithm greedy;
        greedy.name = "greedy";
        greedy.decide = [&ts](const DecideContext& ctx) {
            int prev = ctx.past_answers.empty() ? ctx.initial_state : ctx.past_answers.back();
            Token best = 0;
            double best_cost = kInf;
            for (int s = 0; s < ts.num_states; ++s) {
                double c = ts.d(prev, s) + ts.task_cost(*ctx.request, s);
                if (c < best_cost) {
                    best_cost = c;
                    best = s;
                }
            }
            return best;
        };
        double repeated = run_repeated(ts, greedy, marked);
        double flat = run(p, greedy, plain).total;
        double delta = max_cost(ts);
        CHECK(repeated <= flat + delta * rounds + 1e-9);
        // the repeated optimum is the sum of per-round optima
        double opt_star = opt_repeated(ts, marked);
        CHECK(opt_star >= opt_offline(ts, plain) - delta * rounds - 1e-9);
    }
}

TEST_CASE("hedge with one expert is that expert") {
    auto ts = uniform_mts(3);
    auto p = ts_problem(ts);
    auto expert = constant_algorithm(0, "stay0");
    auto master = hedge_combine(ts, {expert}, 0.5, 1);
    RngStream rng(46, 0);
    for (int it = 0; it < 20; ++it) {
        auto input = random_input(rng, ts, 6);
        double expert_cost = run(p, expert, input).total;
        CHECK(master.expected_cost(input) == doctest::Approx(expert_cost).epsilon(1e-12));
        CHECK(master.sample_cost(input, it) == doctest::Approx(expert_cost).epsilon(1e-12));
    }
}

TEST_CASE("hedge against a zero-cost expert") {
    // state 0 is a haven for every task, so the stay-at-0 expert is free
    TaskSystem ts;
    ts.num_states = 2;
    ts.dist = {0.0, 1.0, 1.0, 0.0};
    ts.tasks = {Task{0.0, 1.0}, Task{0.0, 0.5}};
    ts.name = "haven0";
    auto p = ts_problem(ts);
    std::vector<DeterministicAlgorithm> experts = {constant_algorithm(0, "free"),
                                                   constant_algorithm(1, "pay")};
    double eps = 0.5;
    auto master = hedge_combine(ts, experts, eps, 1);
    double delta = max_cost(ts);
    double envelope = (7.0 / 6.0 + 1.0 / eps) * delta * std::log(2.0);
    RngStream rng(47, 0);
    for (int it = 0; it < 30; ++it) {
        auto input = random_input(rng, ts, 8);
        CHECK(master.expected_cost(input) <= 0.0 + envelope + 1e-9);
    }
}

TEST_CASE("hedge envelope on enumerated inputs") {
    RngStream rng(48, 0);
    auto ts = random_lts(rng, 3, 2, /*allow_inf=*/false);
    auto p = ts_problem(ts);
    std::vector<DeterministicAlgorithm> experts;
    for (int s = 0; s < 3; ++s) experts.push_back(constant_algorithm(s));
    double eps = 1.0;
    auto master = hedge_combine(ts, experts, eps, 2);
    double delta = max_cost(ts);
    double envelope_add = (7.0 / 6.0 + 1.0 / eps) * delta * std::log(3.0);
    for (const auto& input : p.enumerate_inputs(4)) {
        if (input.initial_state != 0) continue;
        double best = kInf;
        for (const auto& e : experts) best = std::min(best, run(p, e, input).total);
        CHECK(master.expected_cost(input) <= (1.0 + 2.0 * eps) * best + envelope_add + 1e-9);
    }
}

TEST_CASE("hedge expected cost matches its own sampler") {
    RngStream rng(49, 0);
    auto ts = random_lts(rng, 3, 2, /*allow_inf=*/false);
    std::vector<DeterministicAlgorithm> experts;
    for (int s = 0; s < 3; ++s) experts.push_back(constant_algorithm(s));
    auto master = hedge_combine(ts, experts, 0.5, 3);
    auto input = random_input(rng, ts, 6);
    const std::size_t trials = 20'000;
    std::vector<double> samples(trials);
    for (std::size_t t = 0; t < trials; ++t) samples[t] = master.sample_cost(input, t);
    auto stats = mean_with_error(std::span<const double>(samples.data(), samples.size()));
    CHECK(std::abs(stats.mean - master.expected_cost(input)) <= 4.0 * stats.std_error);
}

TEST_CASE("phase partition") {
    auto paging = paging_as_lts(1, 2); // 2 states; page p is a haven only for state {p}
    // alternating requests: every second task empties M
    std::vector<Token> tasks = {0, 1, 0, 1, 0};
    auto phases = phase_partition(paging.ts, tasks);
    CHECK(phases == std::vector<std::size_t>{2, 4});

    // a task that is a haven for no state ends every phase immediately
    TaskSystem harsh;
    harsh.num_states = 2;
    harsh.dist = {0, 1, 1, 0};
    harsh.tasks = {Task{1.0, 2.0}};
    auto all_bad = phase_partition(harsh, {0, 0, 0});
    CHECK(all_bad == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("phase boundaries are online computable") {
    RngStream rng(50, 0);
    auto ts = random_lts(rng, 3, 3);
    std::vector<Token> tasks;
    for (int i = 0; i < 20; ++i) tasks.push_back(static_cast<Token>(rng.next_below(3)));
    auto full = phase_partition(ts, tasks);
    for (std::size_t cut = 0; cut < tasks.size(); ++cut) {
        std::vector<Token> prefix(tasks.begin(), tasks.begin() + static_cast<std::ptrdiff_t>(cut));
        auto partial = phase_partition(ts, prefix);
        REQUIRE(partial.size() <= full.size());
        for (std::size_t i = 0; i < partial.size(); ++i) CHECK(partial[i] == full[i]);
    }
}

TEST_CASE("the optimum pays at least the min-cost per complete phase") {
    RngStream rng(51, 0);
    for (int it = 0; it < 40; ++it) {
        auto ts = random_lts(rng, 3, 3);
        auto input = random_input(rng, ts, 12);
        auto phases = phase_partition(ts, input.requests);
        double delta = min_cost(ts, nullptr);
        CHECK(opt_offline(ts, input) >= delta * double(phases.size()) - 1e-9);
    }
}

TEST_CASE("epoch partition groups complete phases") {
    auto paging = paging_as_lts(1, 2);
    std::vector<Token> tasks;
    for (int i = 0; i < 40; ++i) tasks.push_back(i % 2);
    std::size_t per_epoch = phases_per_epoch(paging.ts, 0.5, 1.0, 0.0);
    auto phases = phase_partition(paging.ts, tasks);
    auto epochs = epoch_partition(paging.ts, tasks, 0.5, 1.0, 0.0);
    CHECK(per_epoch >= 1);
    CHECK(epochs.size() == phases.size() / per_epoch);
    for (std::size_t i = 0; i < epochs.size(); ++i)
        CHECK(epochs[i] == phases[(i + 1) * per_epoch - 1]);
    CHECK_THROWS(phases_per_epoch(ssm2(0.0, 0.0), 0.5, 1.0, 0.0)); // degenerate min-cost
}

TEST_CASE("chasing wrapper stays within (1+eps) of the base per phase") {
    RngStream rng(52, 0);
    for (int it = 0; it < 40; ++it) {
        auto ts = random_lts(rng, 3, 3);
        auto p = ts_problem(ts);
        double eps = 0.5;
        double x = (1.0 / eps) * ts.num_states * max_cost(ts);
        DeterministicAlgorithm base;
        base.name = "drift";
        base.decide = [&ts, it](const DecideContext& ctx) {
            // an intentionally wasteful strategy so chasing can trigger
            Token pick = static_cast<Token>((ctx.past_requests.size() + it) % ts.num_states);
            if (std::isinf(ts.task_cost(*ctx.request, pick)))
                for (int s = 0; s < ts.num_states; ++s)
                    if (!std::isinf(ts.task_cost(*ctx.request, s))) return Token(s);
            return pick;
        };
        auto wrapped = opt_chasing_wrap(ts, base, x);
        auto input = random_input(rng, ts, 40);
        auto base_trace = run(p, base, input);
        auto wrapped_trace = run(p, wrapped, input);
        auto phases = phase_partition(ts, input.requests);

        std::size_t start = 0;
        auto bounds = phases;
        bounds.push_back(input.requests.size());
        for (std::size_t b : bounds) {
            double base_phase = 0.0, wrapped_phase = 0.0;
            for (std::size_t i = start; i < b; ++i) {
                base_phase += base_trace.step_costs[i];
                wrapped_phase += wrapped_trace.step_costs[i];
            }
            CHECK(wrapped_phase <= (1.0 + eps) * base_phase + 1e-9);
            start = b;
        }
    }
}

TEST_CASE("task system json round trip") {
    auto ts = ssm2(1.0, 5.0);
    auto back = io::task_system_from_json(io::to_json(ts));
    CHECK(back.num_states == 2);
    CHECK(std::isinf(back.task_cost(kSsmBusy, 1)));
    CHECK(back.d(1, 0) == doctest::Approx(5.0));
}
