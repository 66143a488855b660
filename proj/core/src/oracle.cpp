#include "advicelab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "advicelab/engine.hpp"
#include "advicelab/infotheory.hpp"
#include "advicelab/numeric.hpp"

namespace adv::oracle {

namespace {

/// Trie over visible observations. Depth-i nodes correspond to answering
/// step i; the path to a node fixes the answers at earlier steps.
struct ObsNode {
    std::vector<Token> key;           // initial state + visible request prefix
    int parent = -1;
    std::size_t depth = 0;
    std::vector<std::pair<std::size_t, std::size_t>> hits; // (input index, step)
    std::vector<int> children;
    // Representative context for alphabet queries.
    std::size_t rep_input = 0;
    std::size_t rep_step = 0;
};

struct ObsTrie {
    std::vector<ObsNode> nodes; // preorder
    const OnlineProblem* problem = nullptr;
    const std::vector<InputSequence>* inputs = nullptr;

    std::vector<Token> alphabet_at(int node, const std::vector<Token>& path_answers) const {
        const ObsNode& nd = nodes[static_cast<std::size_t>(node)];
        const InputSequence& in = (*inputs)[nd.rep_input];
        std::span<const Token> past(in.requests.data(), nd.rep_step);
        std::span<const Token> answers(path_answers.data(), path_answers.size());
        return problem->answer_alphabet(in.initial_state, past, answers, in.requests[nd.rep_step]);
    }
};

ObsTrie build_trie(const OnlineProblem& problem, const std::vector<InputSequence>& inputs) {
    ObsTrie trie;
    trie.problem = &problem;
    trie.inputs = &inputs;
    std::map<std::vector<Token>, int> index;
    for (std::size_t ii = 0; ii < inputs.size(); ++ii) {
        const InputSequence& in = inputs[ii];
        int parent = -1;
        for (std::size_t step = 0; step < in.requests.size(); ++step) {
            std::span<const Token> past(in.requests.data(), step);
            auto key = observation_key(problem, in.initial_state, past,
                                       std::optional<Token>(in.requests[step]));
            auto [it, inserted] = index.emplace(key, static_cast<int>(trie.nodes.size()));
            if (inserted) {
                ObsNode nd;
                nd.key = key;
                nd.parent = parent;
                nd.depth = step;
                nd.rep_input = ii;
                nd.rep_step = step;
                trie.nodes.push_back(std::move(nd));
                if (parent >= 0)
                    trie.nodes[static_cast<std::size_t>(parent)].children.push_back(it->second);
            }
            trie.nodes[static_cast<std::size_t>(it->second)].hits.emplace_back(ii, step);
            parent = it->second;
        }
    }
    return trie;
}

/// DFS over the trie enumerating one answer per node; answers of ancestors
/// constrain the alphabet. `emit` is called once per complete assignment.
struct TrieEnumerator {
    const ObsTrie& trie;
    std::vector<Token> chosen; // per node
    std::vector<int> roots;

    explicit TrieEnumerator(const ObsTrie& t) : trie(t) {
        chosen.assign(trie.nodes.size(), 0);
        for (std::size_t i = 0; i < trie.nodes.size(); ++i)
            if (trie.nodes[i].parent < 0) roots.push_back(static_cast<int>(i));
    }

    std::vector<Token> path_answers(int node) const {
        std::vector<Token> answers;
        int cur = trie.nodes[static_cast<std::size_t>(node)].parent;
        while (cur >= 0) {
            answers.push_back(chosen[static_cast<std::size_t>(cur)]);
            cur = trie.nodes[static_cast<std::size_t>(cur)].parent;
        }
        std::reverse(answers.begin(), answers.end());
        return answers;
    }

    // Enumerate assignments for the node list `order[i..]`, where `order` is
    // a sibling list; subtrees are expanded recursively.
    void run(const std::vector<int>& order, std::size_t i,
             const std::function<void()>& done) {
        if (i == order.size()) {
            done();
            return;
        }
        int node = order[i];
        auto answers = path_answers(node);
        auto alphabet = trie.alphabet_at(node, answers);
        if (alphabet.empty())
            throw std::logic_error("enumerate: empty answer alphabet at a reachable observation");
        for (Token a : alphabet) {
            chosen[static_cast<std::size_t>(node)] = a;
            const auto& kids = trie.nodes[static_cast<std::size_t>(node)].children;
            run(kids, 0, [&] { run(order, i + 1, done); });
        }
    }

    void enumerate(const std::function<void(const std::vector<Token>&)>& fn) {
        run(roots, 0, [&] { fn(chosen); });
    }
};

std::uint64_t count_rec(const ObsTrie& trie, TrieEnumerator& en, const std::vector<int>& order,
                        std::size_t i, std::uint64_t cap) {
    if (i == order.size()) return 1;
    int node = order[i];
    auto answers = en.path_answers(node);
    auto alphabet = trie.alphabet_at(node, answers);
    if (alphabet.empty())
        throw std::logic_error("count_algorithms: empty answer alphabet at a reachable observation");
    // Assignments of this node plus its subtree.
    std::uint64_t node_total = 0;
    const auto& kids = trie.nodes[static_cast<std::size_t>(node)].children;
    for (Token a : alphabet) {
        en.chosen[static_cast<std::size_t>(node)] = a;
        std::uint64_t below = count_rec(trie, en, kids, 0, cap);
        if (below > cap) return cap + 1;
        node_total += below;
        if (node_total > cap) return cap + 1;
    }
    // Remaining siblings are independent of this node's answer.
    std::uint64_t rest = count_rec(trie, en, order, i + 1, cap);
    if (rest > cap) return cap + 1;
    if (node_total != 0 && rest > cap / node_total + 1) return cap + 1;
    std::uint64_t total = node_total * rest;
    return total > cap ? cap + 1 : total;
}

DecisionTable table_from_assignment(const ObsTrie& trie, const std::vector<Token>& chosen) {
    DecisionTable table;
    for (std::size_t i = 0; i < trie.nodes.size(); ++i)
        table.entries[trie.nodes[i].key] = chosen[i];
    return table;
}

} // namespace

std::uint64_t count_algorithms(const OnlineProblem& problem,
                               const std::vector<InputSequence>& inputs, std::uint64_t cap) {
    ObsTrie trie = build_trie(problem, inputs);
    TrieEnumerator en(trie);
    return count_rec(trie, en, en.roots, 0, cap);
}

void for_each_algorithm(const OnlineProblem& problem, const std::vector<InputSequence>& inputs,
                        const std::function<void(const DecisionTable&)>& visit, const Caps& caps) {
    std::uint64_t count = count_algorithms(problem, inputs, caps.max_enum_algorithms);
    if (count > caps.max_enum_algorithms)
        throw std::runtime_error("for_each_algorithm: decision-table count exceeds the cap (" +
                                 std::to_string(caps.max_enum_algorithms) + ")");
    ObsTrie trie = build_trie(problem, inputs);
    TrieEnumerator en(trie);
    en.enumerate([&](const std::vector<Token>& chosen) {
        visit(table_from_assignment(trie, chosen));
    });
}

std::vector<DecisionTable> enumerate_algorithms(const OnlineProblem& problem,
                                                const std::vector<InputSequence>& inputs,
                                                const Caps& caps) {
    std::vector<DecisionTable> out;
    for_each_algorithm(problem, inputs, [&](const DecisionTable& t) { out.push_back(t); }, caps);
    return out;
}

namespace {

// --- Partition DP path -------------------------------------------------------

struct NodeCosts {
    std::uint32_t input_mask = 0;             // inputs through this node
    std::vector<Token> answers;               // alphabet at the node
    std::vector<std::vector<double>> cost;    // [answer][input] weighted cost
};

/// Best single-algorithm expected cost restricted to the input subset `mask`,
/// summed over nodes (valid for separable problems, where the answer choice
/// at each observation is free and costs are per-step).
double subset_best(const std::vector<NodeCosts>& nodes, std::uint32_t mask) {
    double total = 0.0;
    for (const NodeCosts& nd : nodes) {
        std::uint32_t active = nd.input_mask & mask;
        if (!active) continue;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& per_answer : nd.cost) {
            double sum = 0.0;
            std::uint32_t bits = active;
            while (bits) {
                int i = std::countr_zero(bits);
                bits &= bits - 1;
                sum += per_answer[static_cast<std::size_t>(i)];
            }
            best = std::min(best, sum);
        }
        total += best;
    }
    return total;
}

BestAdviceResult partition_dp(const OnlineProblem& problem, const InputDistribution& dist, int b,
                              const Caps& caps) {
    const std::size_t s = dist.support.size();
    ObsTrie trie = build_trie(problem, dist.support);

    // Per-node per-answer weighted costs. Alphabets must not depend on the
    // answer history for this path; guarded by the separable contract.
    std::vector<NodeCosts> nodes(trie.nodes.size());
    for (std::size_t v = 0; v < trie.nodes.size(); ++v) {
        NodeCosts& nc = nodes[v];
        nc.answers = trie.alphabet_at(static_cast<int>(v), {});
        nc.cost.assign(nc.answers.size(), std::vector<double>(s, 0.0));
        for (auto [input_idx, step] : trie.nodes[v].hits) {
            nc.input_mask |= (std::uint32_t{1} << input_idx);
            for (std::size_t a = 0; a < nc.answers.size(); ++a)
                nc.cost[a][input_idx] =
                    dist.probs.mass(input_idx) *
                    problem.separable_step_cost(dist.support[input_idx], step, nc.answers[a]);
        }
    }

    const std::uint32_t full = s == 32 ? 0xFFFFFFFFu : ((std::uint32_t{1} << s) - 1);
    std::vector<double> f(static_cast<std::size_t>(full) + 1);
    for (std::uint32_t mask = 0; mask <= full; ++mask) f[mask] = subset_best(nodes, mask);

    std::vector<std::vector<double>> levels;
    std::vector<std::vector<std::uint32_t>> splits;
    std::vector<double> cur = f;
    for (int level = 0; level < b; ++level) {
        std::vector<double> next(static_cast<std::size_t>(full) + 1,
                                 std::numeric_limits<double>::infinity());
        std::vector<std::uint32_t> split(static_cast<std::size_t>(full) + 1, 0);
        for (std::uint32_t mask = 0; mask <= full; ++mask) {
            // enumerate submasks; empty half allowed (unused advice strings)
            std::uint32_t sub = mask;
            for (;;) {
                double v = cur[sub] + cur[mask ^ sub];
                if (v < next[mask]) {
                    next[mask] = v;
                    split[mask] = sub;
                }
                if (sub == 0) break;
                sub = (sub - 1) & mask;
            }
        }
        levels.push_back(next);
        splits.push_back(split);
        cur = levels.back();
    }

    BestAdviceResult res;
    res.method = "partition_dp";
    res.exact = true;
    res.value = cur[full];

    // Recover the partition, then a witness table per part.
    std::vector<std::uint32_t> parts{full};
    for (int level = b - 1; level >= 0; --level) {
        std::vector<std::uint32_t> nxt;
        for (std::uint32_t mask : parts) {
            std::uint32_t l = splits[static_cast<std::size_t>(level)][mask];
            nxt.push_back(l);
            nxt.push_back(mask ^ l);
        }
        parts = std::move(nxt);
    }
    for (std::uint32_t part : parts) {
        DecisionTable table;
        for (std::size_t v = 0; v < trie.nodes.size(); ++v) {
            const NodeCosts& nc = nodes[v];
            std::size_t best_a = 0;
            std::uint32_t active = nc.input_mask & part;
            if (active) {
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t a = 0; a < nc.answers.size(); ++a) {
                    double sum = 0.0;
                    std::uint32_t bits = active;
                    while (bits) {
                        int i = std::countr_zero(bits);
                        bits &= bits - 1;
                        sum += nc.cost[a][static_cast<std::size_t>(i)];
                    }
                    if (sum < best) {
                        best = sum;
                        best_a = a;
                    }
                }
            }
            table.entries[trie.nodes[v].key] = nc.answers[best_a];
        }
        res.witnesses.push_back(std::move(table));
    }
    return res;
}

// --- Exhaustive subset path ---------------------------------------------------

struct CostVector {
    std::vector<double> per_input; // probability-weighted
    double expected = 0.0;
    std::size_t table_index = 0;
};

void subset_search_rec(const std::vector<CostVector>& vecs, std::size_t start, int remaining,
                       std::vector<double>& current_min, double current_cost,
                       const std::vector<double>& global_floor, std::vector<std::size_t>& chosen,
                       double& best, std::vector<std::size_t>& best_set) {
    if (current_cost < best && remaining == 0) {
        best = current_cost;
        best_set = chosen;
        return;
    }
    if (remaining == 0) return;
    // Lower bound: the current minima can only drop to the global floor.
    double floor = 0.0;
    for (std::size_t i = 0; i < current_min.size(); ++i)
        floor += std::min(current_min[i], global_floor[i]);
    if (floor >= best) return;
    for (std::size_t j = start; j + static_cast<std::size_t>(remaining) <= vecs.size(); ++j) {
        std::vector<double> next_min(current_min.size());
        double next_cost = 0.0;
        for (std::size_t i = 0; i < current_min.size(); ++i) {
            next_min[i] = std::min(current_min[i], vecs[j].per_input[i]);
            next_cost += next_min[i];
        }
        if (next_cost >= best && remaining == 1) continue;
        chosen.push_back(j);
        subset_search_rec(vecs, j + 1, remaining - 1, next_min, next_cost, global_floor, chosen,
                          best, best_set);
        chosen.pop_back();
    }
}

BestAdviceResult subset_search(const OnlineProblem& problem, const InputDistribution& dist, int b,
                               const Caps& caps) {
    std::vector<DecisionTable> tables = enumerate_algorithms(problem, dist.support, caps);
    const std::size_t s = dist.support.size();

    std::vector<CostVector> vecs;
    vecs.reserve(tables.size());
    for (std::size_t t = 0; t < tables.size(); ++t) {
        DeterministicAlgorithm alg = table_algorithm(problem, tables[t]);
        CostVector cv;
        cv.per_input.resize(s);
        for (std::size_t i = 0; i < s; ++i)
            cv.per_input[i] = dist.probs.mass(i) * run(problem, alg, dist.support[i]).total;
        cv.expected = pairwise_sum(cv.per_input);
        cv.table_index = t;
        vecs.push_back(std::move(cv));
    }

    // Deduplicate and drop pointwise-dominated vectors.
    std::sort(vecs.begin(), vecs.end(),
              [](const CostVector& a, const CostVector& b2) { return a.expected < b2.expected; });
    std::vector<CostVector> kept;
    for (const CostVector& v : vecs) {
        bool dominated = false;
        for (const CostVector& k : kept) {
            bool le = true;
            for (std::size_t i = 0; le && i < v.per_input.size(); ++i)
                le = k.per_input[i] <= v.per_input[i] + 1e-15;
            if (le) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(v);
    }

    const std::size_t m = std::size_t{1} << b;
    std::vector<double> global_floor(s, std::numeric_limits<double>::infinity());
    for (const CostVector& v : kept)
        for (std::size_t i = 0; i < s; ++i) global_floor[i] = std::min(global_floor[i], v.per_input[i]);

    std::vector<double> init_min(s, std::numeric_limits<double>::infinity());
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> chosen, best_set;
    subset_search_rec(kept, 0, static_cast<int>(std::min(m, kept.size())), init_min,
                      std::numeric_limits<double>::infinity(), global_floor, chosen, best, best_set);

    BestAdviceResult res;
    res.method = "subset_search";
    res.exact = true;
    res.value = best;
    for (std::size_t j : best_set) res.witnesses.push_back(tables[kept[j].table_index]);
    return res;
}

BestAdviceResult greedy_search(const OnlineProblem& problem, const InputDistribution& dist, int b,
                               const Caps& caps) {
    std::vector<DecisionTable> tables = enumerate_algorithms(problem, dist.support, caps);
    const std::size_t s = dist.support.size();
    std::vector<std::vector<double>> cost(tables.size(), std::vector<double>(s));
    for (std::size_t t = 0; t < tables.size(); ++t) {
        DeterministicAlgorithm alg = table_algorithm(problem, tables[t]);
        for (std::size_t i = 0; i < s; ++i)
            cost[t][i] = dist.probs.mass(i) * run(problem, alg, dist.support[i]).total;
    }
    std::vector<double> current(s, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> picked;
    const std::size_t m = std::size_t{1} << b;
    for (std::size_t round = 0; round < m && round < tables.size(); ++round) {
        double best_total = std::numeric_limits<double>::infinity();
        std::size_t best_t = 0;
        for (std::size_t t = 0; t < tables.size(); ++t) {
            double total = 0.0;
            for (std::size_t i = 0; i < s; ++i) total += std::min(current[i], cost[t][i]);
            if (total < best_total) {
                best_total = total;
                best_t = t;
            }
        }
        picked.push_back(best_t);
        for (std::size_t i = 0; i < s; ++i) current[i] = std::min(current[i], cost[best_t][i]);
    }
    BestAdviceResult res;
    res.method = "greedy";
    res.exact = false;
    res.value = pairwise_sum(current);
    for (std::size_t t : picked) res.witnesses.push_back(tables[t]);
    return res;
}

} // namespace

BestAdviceResult best_advice_value(const OnlineProblem& problem, const InputDistribution& dist,
                                   int b, SearchMode mode, const Caps& caps) {
    if (b < 0) throw std::invalid_argument("best_advice_value: b must be >= 0");
    if (b > caps.max_advice_bits)
        throw std::runtime_error("best_advice_value: b exceeds the advice cap");
    if (dist.support.empty()) throw std::invalid_argument("best_advice_value: empty support");

    if (mode == SearchMode::greedy) return greedy_search(problem, dist, b, caps);

    if (problem.separable_step_cost &&
        dist.support.size() <= static_cast<std::size_t>(caps.partition_dp_max_support))
        return partition_dp(problem, dist, b, caps);

    std::uint64_t count = count_algorithms(problem, dist.support, caps.max_enum_algorithms);
    if (count > caps.max_enum_algorithms)
        throw std::runtime_error(
            "best_advice_value: exact search infeasible at this size; use greedy mode");
    return subset_search(problem, dist, b, caps);
}

double bound_floor(const std::string& id, const std::map<std::string, double>& params, double b,
                   double n) {
    auto need = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument("bound_floor(" + id + "): missing parameter '" + key + "'");
        return it->second;
    };
    if (id == "sg_lower") {
        int q = static_cast<int>(need("q"));
        return n * (1.0 - info::K_inv_right(1.0 / q, b / n));
    }
    if (id == "antisg_lower") {
        int q = static_cast<int>(need("q"));
        return n * info::K_inv_left(1.0 / q, b / n);
    }
    if (id == "bsg_lower") {
        double s = need("s"), t = need("t");
        return n * t * info::K_inv_left(s / (s + t), b / n);
    }
    if (id == "rmg_lower") {
        double value = need("V"), norm = need("norm");
        return n * (value - norm * std::sqrt(b * std::log(4.0) / n));
    }
    if (id == "techlemma_bound") {
        double t = need("t"), m_cost = need("M"), r = need("r");
        return info::techlemma_bound(t, m_cost, r, b).value;
    }
    throw std::invalid_argument("bound_floor: no cost floor for formula id '" + id + "'");
}

CertifyReport certify_bound(const std::string& formula_id,
                            const std::map<std::string, double>& params,
                            const OnlineProblem& problem, const InputDistribution& dist,
                            const std::vector<int>& b_grid, const Caps& caps) {
    CertifyReport report;
    report.formula_id = formula_id;
    report.problem = problem.name;
    double n = params.count("n") ? params.at("n")
                                 : static_cast<double>(dist.support.front().length());
    for (int b : b_grid) {
        CertifyRow row;
        row.b = b;
        row.bound = bound_floor(formula_id, params, static_cast<double>(b), n);
        row.brute_force = best_advice_value(problem, dist, b, SearchMode::exact, caps).value;
        row.slack = row.brute_force - row.bound;
        row.sound = row.brute_force >= row.bound - 1e-9;
        report.all_sound = report.all_sound && row.sound;
        report.rows.push_back(row);
    }
    return report;
}

int belady(int k, const std::vector<int>& pages) {
    std::vector<int> cache(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cache[static_cast<std::size_t>(i)] = i;
    return belady(k, pages, std::move(cache));
}

int belady(int k, const std::vector<int>& pages, std::vector<int> cache) {
    if (static_cast<int>(cache.size()) != k)
        throw std::invalid_argument("belady: initial cache must hold k pages");
    int faults = 0;
    for (std::size_t i = 0; i < pages.size(); ++i) {
        int p = pages[i];
        if (std::find(cache.begin(), cache.end(), p) != cache.end()) continue;
        ++faults;
        // Evict the page used farthest in the future.
        std::size_t evict = 0;
        std::size_t farthest = 0;
        for (std::size_t c = 0; c < cache.size(); ++c) {
            std::size_t next_use = pages.size() + 1;
            for (std::size_t j = i + 1; j < pages.size(); ++j) {
                if (pages[j] == cache[c]) {
                    next_use = j;
                    break;
                }
            }
            if (next_use > farthest) {
                farthest = next_use;
                evict = c;
            }
        }
        cache[evict] = p;
    }
    return faults;
}

} // namespace adv::oracle
