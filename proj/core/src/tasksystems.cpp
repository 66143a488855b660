#include "advicelab/tasksystems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "advicelab/engine.hpp"
#include "advicelab/numeric.hpp"

namespace adv::tasksys {

void TaskSystem::validate() const {
    if (num_states < 1) throw std::invalid_argument("TaskSystem: need at least one state");
    if (dist.size() != static_cast<std::size_t>(num_states) * static_cast<std::size_t>(num_states))
        throw std::invalid_argument("TaskSystem: distance matrix has wrong shape");
    for (double v : dist)
        if (v < 0.0 || std::isnan(v) || std::isinf(v))
            throw std::invalid_argument("TaskSystem: transition costs must be finite and >= 0");
    if (tasks.empty()) throw std::invalid_argument("TaskSystem: need at least one task");
    for (const Task& t : tasks) {
        if (t.size() != static_cast<std::size_t>(num_states))
            throw std::invalid_argument("TaskSystem: task vector has wrong length");
        bool finite = false;
        for (double v : t) {
            if (v < 0.0 || std::isnan(v)) throw std::invalid_argument("TaskSystem: bad task cost");
            finite = finite || !std::isinf(v);
        }
        if (!finite)
            throw std::invalid_argument("TaskSystem: every task needs a finite state");
    }
}

double max_cost(const TaskSystem& ts) {
    double delta = 0.0;
    for (std::size_t t = 0; t < ts.tasks.size(); ++t)
        for (int s2 = 0; s2 < ts.num_states; ++s2) {
            double pc = ts.task_cost(static_cast<int>(t), s2);
            if (std::isinf(pc)) continue;
            for (int s = 0; s < ts.num_states; ++s)
                delta = std::max(delta, ts.d(s, s2) + pc);
        }
    return delta;
}

double min_cost(const TaskSystem& ts, bool* degenerate) {
    double best = kInf;
    for (int s = 0; s < ts.num_states; ++s)
        for (int s2 = 0; s2 < ts.num_states; ++s2)
            if (s != s2) best = std::min(best, ts.d(s, s2));
    for (std::size_t t = 0; t < ts.tasks.size(); ++t)
        for (int s = 0; s < ts.num_states; ++s) {
            double c = ts.d(s, s) + ts.task_cost(static_cast<int>(t), s);
            if (c > 0.0 && !std::isinf(c)) best = std::min(best, c);
        }
    bool degen = std::isinf(best);
    if (degenerate) *degenerate = degen;
    return degen ? 0.0 : best;
}

CostProfile cost_profile(const TaskSystem& ts) {
    CostProfile p;
    p.max_cost = max_cost(ts);
    p.min_cost = min_cost(ts, &p.degenerate);
    return p;
}

bool is_lazy_ts(const TaskSystem& ts) {
    for (int s = 0; s < ts.num_states; ++s)
        for (int s2 = 0; s2 < ts.num_states; ++s2) {
            if (s != s2 && !(ts.d(s, s2) > 0.0)) return false;
            for (int mid = 0; mid < ts.num_states; ++mid)
                if (ts.d(s, s2) > ts.d(s, mid) + ts.d(mid, s2) + 1e-12) return false;
        }
    return true;
}

OnlineProblem ts_problem(const TaskSystem& ts) {
    ts.validate();
    auto shared = std::make_shared<const TaskSystem>(ts);
    OnlineProblem p;
    p.name = ts.name.empty() ? "task_system" : ts.name;
    p.objective = Objective::min;
    p.initial_states.resize(static_cast<std::size_t>(ts.num_states));
    for (int s = 0; s < ts.num_states; ++s) p.initial_states[static_cast<std::size_t>(s)] = s;
    p.reveal_before_answer = true;

    p.answer_alphabet = [shared](Token, std::span<const Token>, std::span<const Token>,
                                 Token request) {
        std::vector<Token> valid;
        for (int s = 0; s < shared->num_states; ++s)
            if (!std::isinf(shared->task_cost(request, s))) valid.push_back(s);
        return valid;
    };
    p.step_cost = [shared](Token initial, std::span<const Token>, std::span<const Token> past_answers,
                           Token request, Token answer) {
        int prev = past_answers.empty() ? initial : past_answers.back();
        return shared->d(prev, answer) + shared->task_cost(request, answer);
    };
    p.request_alphabet = [shared](Token, std::span<const Token>) {
        std::vector<Token> all(shared->tasks.size());
        for (std::size_t t = 0; t < shared->tasks.size(); ++t) all[t] = static_cast<Token>(t);
        return all;
    };
    p.enumerate_inputs = [shared](std::size_t n) {
        std::vector<InputSequence> out;
        std::vector<Token> seq(n, 0);
        const int t_count = static_cast<int>(shared->tasks.size());
        for (int s0 = 0; s0 < shared->num_states; ++s0) {
            std::fill(seq.begin(), seq.end(), 0);
            for (;;) {
                out.push_back(ts_input(s0, seq));
                std::size_t i = 0;
                while (i < n && ++seq[i] == t_count) seq[i++] = 0;
                if (i == n) break;
            }
        }
        return out;
    };
    return p;
}

InputSequence ts_input(int initial_state, std::vector<Token> task_indices) {
    InputSequence in;
    in.initial_state = initial_state;
    in.requests = std::move(task_indices);
    return in;
}

namespace {

/// Replay an algorithm's own trajectory on a request prefix. Returns the
/// answers it gives (advice passthrough).
std::vector<Token> replay_answers(const DeterministicAlgorithm& alg, Token initial_state,
                                  std::span<const Token> requests, const BitString* advice) {
    std::vector<Token> answers;
    answers.reserve(requests.size());
    static const BitString empty;
    for (std::size_t i = 0; i < requests.size(); ++i) {
        DecideContext ctx;
        ctx.initial_state = initial_state;
        ctx.past_requests = requests.first(i);
        ctx.past_answers = std::span<const Token>(answers.data(), answers.size());
        ctx.request = requests[i];
        ctx.advice = advice ? advice : &empty;
        ctx.step = i;
        answers.push_back(alg.decide(ctx));
    }
    return answers;
}

} // namespace

DeterministicAlgorithm make_lazy(const TaskSystem& ts, const DeterministicAlgorithm& alg) {
    auto shared = std::make_shared<const TaskSystem>(ts);
    auto inner = alg;
    DeterministicAlgorithm out;
    out.name = "lazy(" + alg.name + ")";
    out.decide = [shared, inner](const DecideContext& ctx) {
        int own = ctx.past_answers.empty() ? ctx.initial_state : ctx.past_answers.back();
        Token task = *ctx.request;
        if (shared->is_haven(own, task)) return own;
        // Mirror the wrapped algorithm's virtual position.
        std::vector<Token> requests(ctx.past_requests.begin(), ctx.past_requests.end());
        requests.push_back(task);
        auto virtual_answers = replay_answers(inner, ctx.initial_state,
                                              std::span<const Token>(requests.data(), requests.size()),
                                              ctx.advice);
        return virtual_answers.back();
    };
    return out;
}

double opt_offline(const TaskSystem& ts, const InputSequence& input) {
    ts.validate();
    std::vector<double> cost(static_cast<std::size_t>(ts.num_states), kInf);
    cost[static_cast<std::size_t>(input.initial_state)] = 0.0;
    for (Token task : input.requests) {
        std::vector<double> next(static_cast<std::size_t>(ts.num_states), kInf);
        for (int s2 = 0; s2 < ts.num_states; ++s2) {
            double pc = ts.task_cost(task, s2);
            if (std::isinf(pc)) continue;
            for (int s = 0; s < ts.num_states; ++s) {
                if (std::isinf(cost[static_cast<std::size_t>(s)])) continue;
                next[static_cast<std::size_t>(s2)] =
                    std::min(next[static_cast<std::size_t>(s2)],
                             cost[static_cast<std::size_t>(s)] + ts.d(s, s2) + pc);
            }
        }
        cost = std::move(next);
    }
    double best = kInf;
    for (double c : cost) best = std::min(best, c);
    return best;
}

namespace {

void exhaustive_rec(const TaskSystem& ts, const InputSequence& input, std::size_t i, int state,
                    double so_far, double& best) {
    if (so_far >= best) return;
    if (i == input.requests.size()) {
        best = so_far;
        return;
    }
    Token task = input.requests[i];
    for (int s2 = 0; s2 < ts.num_states; ++s2) {
        double pc = ts.task_cost(task, s2);
        if (std::isinf(pc)) continue;
        exhaustive_rec(ts, input, i + 1, s2, so_far + ts.d(state, s2) + pc, best);
    }
}

} // namespace

double opt_exhaustive(const TaskSystem& ts, const InputSequence& input) {
    double best = kInf;
    exhaustive_rec(ts, input, 0, input.initial_state, 0.0, best);
    return best;
}

int PagingLts::state_of(const std::vector<int>& cache) const {
    std::vector<int> sorted = cache;
    std::sort(sorted.begin(), sorted.end());
    auto it = std::lower_bound(state_caches.begin(), state_caches.end(), sorted);
    if (it == state_caches.end() || *it != sorted)
        throw std::invalid_argument("PagingLts: unknown cache set");
    return static_cast<int>(it - state_caches.begin());
}

int PagingLts::initial_state() const {
    std::vector<int> first(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) first[static_cast<std::size_t>(i)] = i;
    return state_of(first);
}

PagingLts paging_as_lts(int k, int num_pages) {
    if (k < 1) throw std::invalid_argument("paging_as_lts: k must be >= 1");
    if (k >= num_pages) throw std::invalid_argument("paging_as_lts: requires k < number of pages");

    PagingLts out;
    out.k = k;
    out.num_pages = num_pages;

    // All k-subsets of {0..num_pages-1}, lexicographic.
    std::vector<int> cache(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cache[static_cast<std::size_t>(i)] = i;
    for (;;) {
        out.state_caches.push_back(cache);
        int i = k - 1;
        while (i >= 0 && cache[static_cast<std::size_t>(i)] == num_pages - k + i) --i;
        if (i < 0) break;
        ++cache[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            cache[static_cast<std::size_t>(j)] = cache[static_cast<std::size_t>(j - 1)] + 1;
    }

    const int n_states = static_cast<int>(out.state_caches.size());
    out.ts.name = "paging_k" + std::to_string(k) + "_N" + std::to_string(num_pages);
    out.ts.num_states = n_states;
    out.ts.dist.assign(static_cast<std::size_t>(n_states) * static_cast<std::size_t>(n_states), 0.0);
    for (int a = 0; a < n_states; ++a)
        for (int b = 0; b < n_states; ++b) {
            const auto& ca = out.state_caches[static_cast<std::size_t>(a)];
            const auto& cb = out.state_caches[static_cast<std::size_t>(b)];
            int incoming = 0;
            for (int p : cb)
                if (!std::binary_search(ca.begin(), ca.end(), p)) ++incoming;
            out.ts.dist[static_cast<std::size_t>(a * n_states + b)] = incoming;
        }
    out.ts.tasks.reserve(static_cast<std::size_t>(num_pages));
    for (int p = 0; p < num_pages; ++p) {
        Task t(static_cast<std::size_t>(n_states), kInf);
        for (int s = 0; s < n_states; ++s)
            if (std::binary_search(out.state_caches[static_cast<std::size_t>(s)].begin(),
                                   out.state_caches[static_cast<std::size_t>(s)].end(), p))
                t[static_cast<std::size_t>(s)] = 0.0;
        out.ts.tasks.push_back(std::move(t));
    }
    out.ts.validate();
    return out;
}

TaskSystem ssm2(double run_cost, double wake_cost) {
    if (run_cost < 0.0 || wake_cost < 0.0) throw std::invalid_argument("ssm2: costs must be >= 0");
    TaskSystem ts;
    ts.name = "ssm2";
    ts.num_states = 2; // 0 awake, 1 asleep
    ts.dist = {0.0, 0.0, wake_cost, 0.0};
    ts.tasks = {
        Task{run_cost, kInf},    // busy: must be awake
        Task{run_cost, 0.0},     // idle: sleeping is free
    };
    ts.validate();
    return ts;
}

// --- HedgeMaster -------------------------------------------------------------

HedgeMaster::HedgeMaster(const TaskSystem& ts, std::vector<DeterministicAlgorithm> experts,
                         double eps, std::uint64_t seed)
    : ts_(ts), experts_(std::move(experts)), eps_(eps), seed_(seed) {
    if (experts_.empty()) throw std::invalid_argument("HedgeMaster: expert list is empty");
    if (!(eps_ > 0.0)) throw std::invalid_argument("HedgeMaster: eps must be > 0");
    ts_.validate();
    beta_ = 1.0 / (1.0 + eps_);
    delta_ = max_cost(ts_);
    if (!(delta_ > 0.0)) throw std::invalid_argument("HedgeMaster: max-cost must be positive");
}

std::vector<HedgeMaster::StepPlan> HedgeMaster::plan(const InputSequence& input) const {
    const std::size_t m = experts_.size();
    const std::size_t n = input.requests.size();

    // Expert trajectories and per-step move costs.
    std::vector<std::vector<Token>> answers(m);
    std::vector<std::vector<double>> move_cost(m, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        answers[j] = replay_answers(experts_[j], input.initial_state,
                                    std::span<const Token>(input.requests.data(), n), nullptr);
        int prev = input.initial_state;
        for (std::size_t i = 0; i < n; ++i) {
            int s2 = answers[j][i];
            double pc = ts_.task_cost(input.requests[i], s2);
            if (std::isinf(pc))
                throw std::runtime_error("HedgeMaster: expert '" + experts_[j].name +
                                         "' picked an unavailable state");
            move_cost[j][i] = ts_.d(prev, s2) + pc;
            prev = s2;
        }
    }

    std::vector<StepPlan> plans(n);
    std::vector<double> w(m, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        double wsum = pairwise_sum(w);
        StepPlan& sp = plans[i];
        sp.follow_prob.resize(m);
        for (std::size_t j = 0; j < m; ++j) sp.follow_prob[j] = w[j] / wsum;
        sp.expert_state.resize(m);
        sp.expert_move_cost.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            sp.expert_state[j] = i == 0 ? input.initial_state : answers[j][i - 1];
            sp.expert_move_cost[j] = move_cost[j][i];
        }
        if (i > 0) {
            // Minimal coupling from the previous follow distribution.
            const auto& prev = plans[i - 1].follow_prob;
            const auto& cur = sp.follow_prob;
            double tv = 0.0;
            for (std::size_t j = 0; j < m; ++j) tv += std::max(0.0, cur[j] - prev[j]);
            sp.kernel.assign(m, std::vector<double>(m, 0.0));
            for (std::size_t j = 0; j < m; ++j) {
                if (prev[j] <= 0.0) {
                    sp.kernel[j][j] = 1.0;
                    continue;
                }
                double stay = std::min(prev[j], cur[j]) / prev[j];
                sp.kernel[j][j] = stay;
                double leave = 1.0 - stay;
                if (leave > 0.0 && tv > 0.0) {
                    for (std::size_t j2 = 0; j2 < m; ++j2) {
                        if (j2 == j) continue;
                        double gain = std::max(0.0, cur[j2] - prev[j2]);
                        sp.kernel[j][j2] = leave * gain / tv;
                    }
                }
            }
        }
        // Weight update after serving step i (losses scaled into [0,1]).
        for (std::size_t j = 0; j < m; ++j)
            w[j] *= std::pow(beta_, move_cost[j][i] / delta_);
    }
    return plans;
}

double HedgeMaster::expected_cost(const InputSequence& input) const {
    auto plans = plan(input);
    const std::size_t m = experts_.size();
    std::vector<double> terms;
    for (std::size_t i = 0; i < plans.size(); ++i) {
        const StepPlan& sp = plans[i];
        for (std::size_t j = 0; j < m; ++j)
            terms.push_back(sp.follow_prob[j] * sp.expert_move_cost[j]);
        if (i > 0) {
            const StepPlan& prev_sp = plans[i - 1];
            for (std::size_t j = 0; j < m; ++j) {
                if (prev_sp.follow_prob[j] <= 0.0) continue;
                for (std::size_t j2 = 0; j2 < m; ++j2) {
                    if (j2 == j || sp.kernel[j][j2] <= 0.0) continue;
                    double switch_cost = ts_.d(sp.expert_state[j], sp.expert_state[j2]);
                    terms.push_back(prev_sp.follow_prob[j] * sp.kernel[j][j2] * switch_cost);
                }
            }
        }
    }
    return pairwise_sum(terms);
}

double HedgeMaster::sample_cost(const InputSequence& input, std::uint64_t trial) const {
    auto plans = plan(input);
    RngStream rng(seed_, trial);
    double total = 0.0;
    std::size_t follow = 0;
    for (std::size_t i = 0; i < plans.size(); ++i) {
        const StepPlan& sp = plans[i];
        if (i == 0) {
            follow = rng.next_index(sp.follow_prob);
        } else {
            std::size_t next = rng.next_index(sp.kernel[follow]);
            if (next != follow) total += ts_.d(sp.expert_state[follow], sp.expert_state[next]);
            follow = next;
        }
        total += sp.expert_move_cost[follow];
    }
    return total;
}

HedgeMaster hedge_combine(const TaskSystem& ts, std::vector<DeterministicAlgorithm> experts,
                          double eps, std::uint64_t seed) {
    return HedgeMaster(ts, std::move(experts), eps, seed);
}

// --- Reset-lemma machinery ---------------------------------------------------

std::vector<std::size_t> phase_partition(const TaskSystem& ts, const std::vector<Token>& tasks) {
    ts.validate();
    std::vector<std::size_t> boundaries;
    std::vector<bool> in_m(static_cast<std::size_t>(ts.num_states), true);
    int m_size = ts.num_states;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        for (int s = 0; s < ts.num_states; ++s) {
            if (in_m[static_cast<std::size_t>(s)] && !ts.is_haven(s, tasks[i])) {
                in_m[static_cast<std::size_t>(s)] = false;
                --m_size;
            }
        }
        if (m_size == 0) {
            boundaries.push_back(i + 1);
            std::fill(in_m.begin(), in_m.end(), true);
            m_size = ts.num_states;
        }
    }
    return boundaries;
}

std::size_t phases_per_epoch(const TaskSystem& ts, double eps, double c, double alpha) {
    if (!(eps > 0.0)) throw std::invalid_argument("phases_per_epoch: eps must be > 0");
    if (!(c >= 1.0)) throw std::invalid_argument("phases_per_epoch: c must be >= 1");
    if (alpha < 0.0) throw std::invalid_argument("phases_per_epoch: alpha must be >= 0");
    CostProfile p = cost_profile(ts);
    if (p.degenerate || !(p.min_cost > 0.0))
        throw std::invalid_argument("phases_per_epoch: task system has no positive min-cost");
    double phases = std::ceil((alpha + (c + eps) * p.max_cost) / (eps * p.min_cost) - 1e-12);
    return static_cast<std::size_t>(std::max(1.0, phases));
}

std::vector<std::size_t> epoch_partition(const TaskSystem& ts, const std::vector<Token>& tasks,
                                         double eps, double c, double alpha) {
    std::size_t per_epoch = phases_per_epoch(ts, eps, c, alpha);
    auto phases = phase_partition(ts, tasks);
    std::vector<std::size_t> epochs;
    for (std::size_t i = per_epoch; i <= phases.size(); i += per_epoch)
        epochs.push_back(phases[i - 1]);
    return epochs;
}

namespace {

struct PhaseView {
    std::size_t phase_start = 0;       // index of the first task in the current phase
    std::vector<bool> m_before;        // M before the current task
    std::vector<bool> m_after;         // M after applying the current task
    bool ends_phase = false;
};

PhaseView scan_phase(const TaskSystem& ts, std::span<const Token> past, Token current) {
    PhaseView v;
    v.m_before.assign(static_cast<std::size_t>(ts.num_states), true);
    v.phase_start = 0;
    int m_size = ts.num_states;
    for (std::size_t i = 0; i < past.size(); ++i) {
        for (int s = 0; s < ts.num_states; ++s)
            if (v.m_before[static_cast<std::size_t>(s)] && !ts.is_haven(s, past[i])) {
                v.m_before[static_cast<std::size_t>(s)] = false;
                --m_size;
            }
        if (m_size == 0) {
            std::fill(v.m_before.begin(), v.m_before.end(), true);
            m_size = ts.num_states;
            v.phase_start = i + 1;
        }
    }
    v.m_after = v.m_before;
    int after_size = m_size;
    for (int s = 0; s < ts.num_states; ++s)
        if (v.m_after[static_cast<std::size_t>(s)] && !ts.is_haven(s, current)) {
            v.m_after[static_cast<std::size_t>(s)] = false;
            --after_size;
        }
    v.ends_phase = after_size == 0;
    return v;
}

} // namespace

DeterministicAlgorithm opt_chasing_wrap(const TaskSystem& ts, const DeterministicAlgorithm& base,
                                        double x) {
    auto shared = std::make_shared<const TaskSystem>(ts);
    auto inner = base;
    DeterministicAlgorithm out;
    out.name = "chase(" + base.name + ")";
    out.decide = [shared, inner, x](const DecideContext& ctx) -> Token {
        Token current = *ctx.request;
        PhaseView view = scan_phase(*shared, ctx.past_requests, current);

        // Base's virtual trajectory and its in-phase cost before this task.
        auto base_answers = replay_answers(inner, ctx.initial_state, ctx.past_requests, ctx.advice);
        double base_in_phase = 0.0;
        {
            int prev = ctx.initial_state;
            for (std::size_t i = 0; i < ctx.past_requests.size(); ++i) {
                int s2 = base_answers[i];
                if (i >= view.phase_start)
                    base_in_phase += shared->d(prev, s2) +
                                     shared->task_cost(ctx.past_requests[i], s2);
                prev = s2;
            }
        }
        bool chasing = base_in_phase >= x;

        if (!chasing || view.ends_phase) {
            // Mirror base (rejoining on the phase's last task when chasing).
            std::vector<Token> requests(ctx.past_requests.begin(), ctx.past_requests.end());
            requests.push_back(current);
            auto with_current = replay_answers(inner, ctx.initial_state,
                                               std::span<const Token>(requests.data(), requests.size()),
                                               ctx.advice);
            return with_current.back();
        }
        // Chasing: stay while the current state serves the task for free,
        // else hop to the smallest-index state still in M. Staying whenever
        // possible keeps the whole chase, rejoin included, within k moves.
        int own = ctx.past_answers.empty() ? ctx.initial_state : ctx.past_answers.back();
        if (shared->is_haven(own, current)) return own;
        for (int s = 0; s < shared->num_states; ++s)
            if (view.m_after[static_cast<std::size_t>(s)]) return s;
        return own; // unreachable: ends_phase covers the empty case
    };
    return out;
}

double run_repeated(const TaskSystem& ts, const DeterministicAlgorithm& alg,
                    const InputSequence& marked_input) {
    ts.validate();
    std::vector<Token> answers;
    answers.reserve(marked_input.requests.size());
    std::vector<double> costs;
    costs.reserve(marked_input.requests.size());
    static const BitString empty;
    std::size_t next_reset = 0;
    int state = marked_input.initial_state;
    for (std::size_t i = 0; i < marked_input.requests.size(); ++i) {
        if (next_reset < marked_input.round_starts.size() &&
            marked_input.round_starts[next_reset] == i) {
            state = marked_input.initial_state; // free reset at the round boundary
            ++next_reset;
        }
        DecideContext ctx;
        ctx.initial_state = marked_input.initial_state;
        ctx.past_requests = std::span<const Token>(marked_input.requests.data(), i);
        ctx.past_answers = std::span<const Token>(answers.data(), answers.size());
        ctx.request = marked_input.requests[i];
        ctx.advice = &empty;
        ctx.step = i;
        Token s2 = alg.decide(ctx);
        double pc = ts.task_cost(marked_input.requests[i], s2);
        if (std::isinf(pc))
            throw std::runtime_error("run_repeated: unavailable state chosen at step " +
                                     std::to_string(i));
        costs.push_back(ts.d(state, s2) + pc);
        answers.push_back(s2);
        state = s2;
    }
    return pairwise_sum(costs);
}

double opt_repeated(const TaskSystem& ts, const InputSequence& marked_input) {
    std::vector<double> totals;
    std::size_t start = 0;
    auto bounds = marked_input.round_starts;
    bounds.push_back(marked_input.requests.size());
    for (std::size_t b : bounds) {
        InputSequence round;
        round.initial_state = marked_input.initial_state;
        round.requests.assign(marked_input.requests.begin() + static_cast<std::ptrdiff_t>(start),
                              marked_input.requests.begin() + static_cast<std::ptrdiff_t>(b));
        if (!round.requests.empty()) totals.push_back(opt_offline(ts, round));
        start = b;
    }
    return pairwise_sum(totals);
}

} // namespace adv::tasksys
