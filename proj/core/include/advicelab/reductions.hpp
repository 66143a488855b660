#pragma once

#include <functional>
#include <string>
#include <vector>

#include "advicelab/caps.hpp"
#include "advicelab/problem.hpp"
#include "advicelab/rational.hpp"

namespace adv::red {

// --- Anti string guessing -> paging ------------------------------------------

/// Page sequence induced by a string x over [k+1]: request page x_i each
/// round, initial cache {0..k-1} out of the k+1 pages {0..k}.
struct PagingReductionInstance {
    int k = 0;
    std::vector<int> x;     // characters in 0..k
    std::vector<int> pages; // = x, pages coincide with characters

    std::size_t n() const { return x.size(); }
};

PagingReductionInstance antisg_to_paging(const std::vector<int>& x, int k);

/// An online paging policy: given the current cache, the request, and the
/// position, name the page to evict on a fault.
struct PagingPolicy {
    std::string name;
    std::function<int(const std::vector<int>& cache, int request, std::size_t position,
                      const std::vector<int>& history)>
        evict;
};

PagingPolicy lru_policy();
PagingPolicy fifo_policy();
PagingPolicy belady_policy(const std::vector<int>& full_sequence);

struct PagingRun {
    std::vector<bool> fault;          // per request
    std::vector<int> outside_before;  // the page outside the cache before each request (k+1 pages)
    int faults = 0;
};

/// Simulate a policy on a page sequence with initial cache {0..k-1} over the
/// page universe {0..num_pages-1}. outside_before is only filled when
/// num_pages == k+1.
PagingRun simulate_paging(int k, int num_pages, const std::vector<int>& pages,
                          const PagingPolicy& policy);

/// The guessing algorithm induced by a paging policy: in round i it answers
/// the unique page outside the policy's cache. Its round-i mistakes coincide
/// with the policy's faults; returns the per-round answers.
std::vector<int> paging_adapter_answers(const PagingReductionInstance& instance,
                                        const PagingPolicy& policy);

// --- Weighted binary string guessing -> bin packing ---------------------------

struct BinPackReductionInstance {
    std::vector<int> x;          // the binary string
    Rational eps;
    std::vector<Rational> items; // |x|_1 + n + (n - |x|_1) sizes, arrival order
    std::size_t phase1 = 0;      // item count of phase 1
    std::size_t phase2 = 0;      // = n

    std::size_t n() const { return x.size(); }
};

/// Three-phase instance: |x|_1 items of size 1/2+eps, n bisection midpoints
/// in (1/3, 1/2-eps), and one complement 1-a per small midpoint a. Midpoint i
/// depends only on x_1..x_{i-1}. Defaults eps to 2^-(n+3).
BinPackReductionInstance bsg_to_binpack(const std::vector<int>& x);
BinPackReductionInstance bsg_to_binpack(const std::vector<int>& x, const Rational& eps);

/// The explicit optimal packing uses exactly n bins; every valid packing
/// needs at least n bins (there are n items larger than 1/2).
int binpack_opt(const BinPackReductionInstance& instance);

/// An online bin packing policy: which bin receives each arriving item
/// (bins.size() means "open a new bin"). `bins` holds the current loads.
struct BinPackPolicy {
    std::string name;
    std::function<std::size_t(const std::vector<Rational>& bins, const Rational& item)> place;
};

BinPackPolicy first_fit_policy();
BinPackPolicy best_fit_policy();

struct Packing {
    std::vector<std::vector<std::size_t>> bins; // item indices per bin
    std::vector<std::size_t> bin_of;            // per item
};

Packing pack_online(const std::vector<Rational>& items, const BinPackPolicy& policy);

int first_fit(const std::vector<Rational>& items);
int best_fit(const std::vector<Rational>& items);

/// Exact minimum bin count by branch and bound (item count capped).
int exact_opt(const std::vector<Rational>& items, const Caps& caps = Caps::defaults());

/// The guess induced by how a policy packs each phase-2 item: 1 when it lands
/// on a phase-1 item or another phase-2 item, 0 when it opens a new bin.
std::vector<int> binpack_adapter_answers(const BinPackReductionInstance& instance,
                                         const BinPackPolicy& policy);

struct MistakeAudit {
    int e0 = 0;   // guessed 1 when the truth was 0
    int e1 = 0;   // guessed 0 when the truth was 1
    int bins = 0; // bins opened by the policy on the full instance
    bool e0_ok = false; // e0 <= 2 (bins - n)
    bool e1_ok = false; // e1 <= bins - n
};

MistakeAudit mistake_audit(const BinPackReductionInstance& instance, const BinPackPolicy& policy);

/// max over t>0 of t/((1+t)(2+t)) + 1, attained at t = sqrt(2); equals
/// 4 - 2 sqrt(2).
double binpack_ratio_threshold();

/// The same maximum located numerically (golden-section cross-check).
double binpack_ratio_threshold_numeric();

} // namespace adv::red
