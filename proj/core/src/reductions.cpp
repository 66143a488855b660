#include "advicelab/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adv::red {

PagingReductionInstance antisg_to_paging(const std::vector<int>& x, int k) {
    if (k < 1) throw std::invalid_argument("antisg_to_paging: k must be >= 1");
    for (int c : x)
        if (c < 0 || c > k)
            throw std::invalid_argument("antisg_to_paging: characters must lie in [k+1]");
    PagingReductionInstance inst;
    inst.k = k;
    inst.x = x;
    inst.pages = x;
    return inst;
}

PagingPolicy lru_policy() {
    PagingPolicy p;
    p.name = "lru";
    p.evict = [](const std::vector<int>& cache, int, std::size_t position,
                 const std::vector<int>& history) {
        // Least recently used; pages never used fall back to cache order.
        int victim = cache.front();
        std::ptrdiff_t oldest = static_cast<std::ptrdiff_t>(position);
        for (int page : cache) {
            std::ptrdiff_t last = -1;
            for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(position) - 1; j >= 0; --j) {
                if (history[static_cast<std::size_t>(j)] == page) {
                    last = j;
                    break;
                }
            }
            if (last < oldest) {
                oldest = last;
                victim = page;
            }
        }
        return victim;
    };
    return p;
}

PagingPolicy fifo_policy() {
    PagingPolicy p;
    p.name = "fifo";
    p.evict = [](const std::vector<int>& cache, int, std::size_t, const std::vector<int>&) {
        return cache.front(); // cache kept in arrival order by the simulator
    };
    return p;
}

PagingPolicy belady_policy(const std::vector<int>& full_sequence) {
    auto seq = full_sequence;
    PagingPolicy p;
    p.name = "belady";
    p.evict = [seq](const std::vector<int>& cache, int, std::size_t position,
                    const std::vector<int>&) {
        int victim = cache.front();
        std::size_t farthest = 0;
        for (int page : cache) {
            std::size_t next_use = seq.size() + 1;
            for (std::size_t j = position + 1; j < seq.size(); ++j) {
                if (seq[j] == page) {
                    next_use = j;
                    break;
                }
            }
            if (next_use > farthest) {
                farthest = next_use;
                victim = page;
            }
        }
        return victim;
    };
    return p;
}

PagingRun simulate_paging(int k, int num_pages, const std::vector<int>& pages,
                          const PagingPolicy& policy) {
    if (num_pages <= k) throw std::invalid_argument("simulate_paging: need more pages than slots");
    std::vector<int> cache(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cache[static_cast<std::size_t>(i)] = i;

    PagingRun run;
    run.fault.resize(pages.size());
    run.outside_before.resize(pages.size(), -1);
    for (std::size_t i = 0; i < pages.size(); ++i) {
        if (num_pages == k + 1) {
            // Exactly one page is outside the cache.
            std::vector<bool> in_cache(static_cast<std::size_t>(num_pages), false);
            for (int page : cache) in_cache[static_cast<std::size_t>(page)] = true;
            for (int page = 0; page < num_pages; ++page)
                if (!in_cache[static_cast<std::size_t>(page)]) run.outside_before[i] = page;
        }
        int request = pages[i];
        auto it = std::find(cache.begin(), cache.end(), request);
        if (it != cache.end()) {
            run.fault[i] = false;
            continue;
        }
        run.fault[i] = true;
        ++run.faults;
        int victim = policy.evict(cache, request, i, pages);
        auto vit = std::find(cache.begin(), cache.end(), victim);
        if (vit == cache.end())
            throw std::runtime_error("simulate_paging: policy evicted a page not in the cache");
        cache.erase(vit);
        cache.push_back(request); // arrival order (FIFO eviction reads the front)
    }
    return run;
}

std::vector<int> paging_adapter_answers(const PagingReductionInstance& instance,
                                        const PagingPolicy& policy) {
    PagingRun run = simulate_paging(instance.k, instance.k + 1, instance.pages, policy);
    return run.outside_before;
}

// --- Bin packing ---------------------------------------------------------------

BinPackReductionInstance bsg_to_binpack(const std::vector<int>& x) {
    int n = static_cast<int>(x.size());
    return bsg_to_binpack(x, Rational::pow2_inverse(std::min(n + 3, 40)));
}

BinPackReductionInstance bsg_to_binpack(const std::vector<int>& x, const Rational& eps) {
    const Rational third(1, 3), half(1, 2), one(1), two(2);
    if (!(eps > Rational(0)) || !(third < half - eps))
        throw std::invalid_argument("bsg_to_binpack: eps too large for the midpoint recurrence");
    for (int c : x)
        if (c != 0 && c != 1) throw std::invalid_argument("bsg_to_binpack: x must be binary");

    BinPackReductionInstance inst;
    inst.x = x;
    inst.eps = eps;
    const std::size_t n = x.size();
    std::size_t ones = 0;
    for (int c : x) ones += static_cast<std::size_t>(c);

    // Phase 1: |x|_1 items of size 1/2 + eps.
    inst.phase1 = ones;
    for (std::size_t i = 0; i < ones; ++i) inst.items.push_back(half + eps);

    // Phase 2: bisection midpoints; item i has size m_{i-1}, which depends
    // only on x_1..x_{i-1}.
    inst.phase2 = n;
    Rational lo = third, hi = half - eps;
    std::vector<Rational> small_sizes;
    for (std::size_t i = 0; i < n; ++i) {
        Rational mid = (lo + hi) / two;
        if (!(third < mid && mid < half - eps))
            throw std::invalid_argument("bsg_to_binpack: midpoint left (1/3, 1/2-eps)");
        inst.items.push_back(mid);
        if (x[i] == 0) {
            small_sizes.push_back(mid); // small item
            lo = mid;
        } else {
            hi = mid; // large item
        }
    }

    // Phase 3: complements of the small items.
    for (const Rational& a : small_sizes) inst.items.push_back(one - a);
    return inst;
}

int binpack_opt(const BinPackReductionInstance& instance) {
    return static_cast<int>(instance.n());
}

BinPackPolicy first_fit_policy() {
    BinPackPolicy p;
    p.name = "first_fit";
    p.place = [](const std::vector<Rational>& bins, const Rational& item) {
        const Rational one(1);
        for (std::size_t b = 0; b < bins.size(); ++b)
            if (!(bins[b] + item > one)) return b;
        return bins.size();
    };
    return p;
}

BinPackPolicy best_fit_policy() {
    BinPackPolicy p;
    p.name = "best_fit";
    p.place = [](const std::vector<Rational>& bins, const Rational& item) {
        const Rational one(1);
        std::size_t best = bins.size();
        for (std::size_t b = 0; b < bins.size(); ++b) {
            if (bins[b] + item > one) continue;
            if (best == bins.size() || bins[b] > bins[best]) best = b;
        }
        return best;
    };
    return p;
}

Packing pack_online(const std::vector<Rational>& items, const BinPackPolicy& policy) {
    const Rational one(1);
    Packing packing;
    std::vector<Rational> loads;
    packing.bin_of.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (!(items[i] > Rational(0)) || items[i] > one)
            throw std::invalid_argument("pack_online: item sizes must lie in (0,1]");
        std::size_t b = policy.place(loads, items[i]);
        if (b > loads.size()) throw std::runtime_error("pack_online: policy named a bad bin");
        if (b == loads.size()) {
            loads.push_back(Rational(0));
            packing.bins.emplace_back();
        }
        if (loads[b] + items[i] > one)
            throw std::runtime_error("pack_online: policy overfilled a bin");
        loads[b] += items[i];
        packing.bins[b].push_back(i);
        packing.bin_of.push_back(b);
    }
    return packing;
}

int first_fit(const std::vector<Rational>& items) {
    return static_cast<int>(pack_online(items, first_fit_policy()).bins.size());
}

int best_fit(const std::vector<Rational>& items) {
    return static_cast<int>(pack_online(items, best_fit_policy()).bins.size());
}

namespace {

void exact_opt_rec(const std::vector<Rational>& items, std::size_t i, std::vector<Rational>& loads,
                   int used, int& best) {
    if (used >= best) return;
    if (i == items.size()) {
        best = used;
        return;
    }
    const Rational one(1);
    // Symmetry cut: only the first empty bin is tried.
    bool tried_empty = false;
    for (std::size_t b = 0; b < loads.size(); ++b) {
        if (loads[b] == Rational(0)) {
            if (tried_empty) continue;
            tried_empty = true;
        }
        if (loads[b] + items[i] > one) continue;
        Rational saved = loads[b];
        bool was_empty = loads[b] == Rational(0);
        loads[b] += items[i];
        exact_opt_rec(items, i + 1, loads, used + (was_empty ? 1 : 0), best);
        loads[b] = saved;
    }
}

} // namespace

int exact_opt(const std::vector<Rational>& items, const Caps& caps) {
    if (static_cast<int>(items.size()) > caps.binpack_exact_max_items)
        throw std::runtime_error("exact_opt: item count exceeds the cap (" +
                                 std::to_string(caps.binpack_exact_max_items) + ")");
    int best = static_cast<int>(items.size());
    std::vector<Rational> loads(items.size(), Rational(0));
    exact_opt_rec(items, 0, loads, 0, best);
    return best;
}

std::vector<int> binpack_adapter_answers(const BinPackReductionInstance& instance,
                                         const BinPackPolicy& policy) {
    Packing packing = pack_online(instance.items, policy);
    std::vector<int> answers;
    answers.reserve(instance.phase2);
    for (std::size_t j = 0; j < instance.phase2; ++j) {
        std::size_t item = instance.phase1 + j;
        std::size_t bin = packing.bin_of[item];
        // New bin iff this item is the first in its bin.
        answers.push_back(packing.bins[bin].front() == item ? 0 : 1);
    }
    return answers;
}

MistakeAudit mistake_audit(const BinPackReductionInstance& instance, const BinPackPolicy& policy) {
    MistakeAudit audit;
    Packing packing = pack_online(instance.items, policy);
    audit.bins = static_cast<int>(packing.bins.size());
    std::vector<int> answers = binpack_adapter_answers(instance, policy);
    for (std::size_t i = 0; i < instance.n(); ++i) {
        if (answers[i] == 1 && instance.x[i] == 0) ++audit.e0;
        if (answers[i] == 0 && instance.x[i] == 1) ++audit.e1;
    }
    int extra = audit.bins - static_cast<int>(instance.n());
    audit.e0_ok = audit.e0 <= 2 * extra;
    audit.e1_ok = audit.e1 <= extra;
    return audit;
}

double binpack_ratio_threshold() { return 4.0 - 2.0 * std::sqrt(2.0); }

double binpack_ratio_threshold_numeric() {
    auto g = [](double t) { return t / ((1.0 + t) * (2.0 + t)) + 1.0; };
    // Golden-section search on [0, 10].
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 10.0;
    double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    for (int it = 0; it < 200; ++it) {
        if (g(a) < g(b))
            lo = a;
        else
            hi = b;
        a = hi - phi * (hi - lo);
        b = lo + phi * (hi - lo);
    }
    return g(0.5 * (lo + hi));
}

} // namespace adv::red
