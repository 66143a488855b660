#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "advicelab/algorithm.hpp"
#include "advicelab/problem.hpp"
#include "advicelab/rng.hpp"

namespace adv::tasksys {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// A task maps each state to a processing cost (possibly infinite); at least
/// one state must be finite.
using Task = std::vector<double>;

/// States 0..N-1, a finite task set, and a non-negative transition cost
/// function d(s,s'). An input is an initial state plus a sequence of task
/// indices; serving task t from state s by moving to s' costs d(s,s')+t(s').
struct TaskSystem {
    std::string name;
    int num_states = 0;
    std::vector<Task> tasks;
    std::vector<double> dist; // row-major num_states^2

    double d(int s, int s2) const { return dist.at(static_cast<std::size_t>(s * num_states + s2)); }
    double task_cost(int task, int s) const {
        return tasks.at(static_cast<std::size_t>(task)).at(static_cast<std::size_t>(s));
    }
    void validate() const;

    /// s is a haven against task t iff d(s,s) + t(s) == 0.
    bool is_haven(int s, int task) const { return d(s, s) + task_cost(task, s) == 0.0; }
};

struct CostProfile {
    double max_cost = 0.0;  // Delta
    double min_cost = 0.0;  // delta
    bool degenerate = false; // no positive per-round cost anywhere
};

double max_cost(const TaskSystem& ts);
double min_cost(const TaskSystem& ts, bool* degenerate = nullptr);
CostProfile cost_profile(const TaskSystem& ts);

/// Transition costs positive off the diagonal and triangle inequality.
bool is_lazy_ts(const TaskSystem& ts);

/// The task system as a generic online problem: requests are task indices,
/// answers are states with finite processing cost.
OnlineProblem ts_problem(const TaskSystem& ts);

InputSequence ts_input(int initial_state, std::vector<Token> task_indices);

/// Laziness wrapper: tracks the wrapped algorithm's virtual state but stays
/// put whenever the current state is a haven for the current task. Never
/// costs more on a lazy task system.
DeterministicAlgorithm make_lazy(const TaskSystem& ts, const DeterministicAlgorithm& alg);

/// Exact offline optimum by dynamic programming over states.
double opt_offline(const TaskSystem& ts, const InputSequence& input);

/// Offline optimum by exhaustive search over state sequences (cross-check
/// for tiny instances).
double opt_exhaustive(const TaskSystem& ts, const InputSequence& input);

/// Paging with cache size k over N pages as a lazy task system. States are
/// the k-subsets of pages (combinatorial rank order); the task for page p
/// charges 0 on caches containing p and is infinite otherwise; d(C,C') is the
/// number of incoming pages.
struct PagingLts {
    TaskSystem ts;
    int k = 0;
    int num_pages = 0;
    std::vector<std::vector<int>> state_caches; // state index -> sorted page set

    int state_of(const std::vector<int>& cache) const;
    Token task_of_page(int page) const { return page; }
    int initial_state() const; // cache {0..k-1}
};

PagingLts paging_as_lts(int k, int num_pages);

/// Two-state sleep management (repeated ski rental): state 0 is awake, state
/// 1 is asleep. The busy task forces awake; the idle task is free while
/// asleep. Waking costs wake_cost, running awake costs run_cost per step.
TaskSystem ssm2(double run_cost, double wake_cost);
constexpr Token kSsmBusy = 0;
constexpr Token kSsmIdle = 1;

// --- Multiplicative-weights expert combination ------------------------------

/// Randomized master that follows one expert at a time, reweighting by
/// beta^(cost/Delta) with beta = 1/(1+eps) and switching states with the
/// minimal coupling between consecutive weight distributions. Moving to the
/// newly drawn expert's state costs at most Delta per switch.
class HedgeMaster {
public:
    HedgeMaster(const TaskSystem& ts, std::vector<DeterministicAlgorithm> experts, double eps,
                std::uint64_t seed);

    /// Exact expected cost on one input: forward dynamic programming over the
    /// followed-expert distribution (expert costs plus expected switch costs).
    double expected_cost(const InputSequence& input) const;

    /// Cost of one sampled trajectory (trial index selects the random tape).
    double sample_cost(const InputSequence& input, std::uint64_t trial) const;

    std::size_t num_experts() const { return experts_.size(); }
    double delta() const { return delta_; }
    double eps() const { return eps_; }

private:
    struct StepPlan {
        std::vector<double> follow_prob;    // p_i(j) before serving step i
        std::vector<std::vector<double>> kernel; // switch kernel into step i (empty at i=0)
        std::vector<int> expert_state;      // expert states entering step i
        std::vector<double> expert_move_cost; // cost expert j pays at step i
    };

    std::vector<StepPlan> plan(const InputSequence& input) const;

    TaskSystem ts_;
    std::vector<DeterministicAlgorithm> experts_;
    double eps_;
    double beta_;
    double delta_;
    std::uint64_t seed_;
};

HedgeMaster hedge_combine(const TaskSystem& ts, std::vector<DeterministicAlgorithm> experts,
                          double eps, std::uint64_t seed = 1);

// --- Reset-lemma machinery ---------------------------------------------------

/// Phase boundaries: a phase ends with the task that empties the set M of
/// states that were havens against every task of the phase so far. Returns
/// the index one past each complete phase's last task.
std::vector<std::size_t> phase_partition(const TaskSystem& ts, const std::vector<Token>& tasks);

/// Epoch boundaries: an epoch ends after ceil((alpha + (c+eps) Delta) /
/// (eps delta)) complete phases.
std::vector<std::size_t> epoch_partition(const TaskSystem& ts, const std::vector<Token>& tasks,
                                         double eps, double c, double alpha);

/// Number of complete phases per epoch used by epoch_partition.
std::size_t phases_per_epoch(const TaskSystem& ts, double eps, double c, double alpha);

/// Wrapper that mirrors `base` until its in-phase cost reaches x, then chases
/// the shrinking haven set M until the phase ends, rejoining base on the
/// phase's last task.
DeterministicAlgorithm opt_chasing_wrap(const TaskSystem& ts, const DeterministicAlgorithm& base,
                                        double x);

/// Serve a marked concatenation under repeated-problem semantics: the state
/// resets to the initial state (free of charge) at every round boundary.
/// Returns the total cost.
double run_repeated(const TaskSystem& ts, const DeterministicAlgorithm& alg,
                    const InputSequence& marked_input);

/// Offline optimum under the same repeated semantics (sum of per-round
/// optima).
double opt_repeated(const TaskSystem& ts, const InputSequence& marked_input);

} // namespace adv::tasksys
