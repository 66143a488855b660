#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace adv::info {

/// Probability mass function over outcomes 0..size()-1. Masses are
/// non-negative and sum to 1 within 1e-12.
class FiniteDistribution {
public:
    FiniteDistribution() = default;
    explicit FiniteDistribution(std::vector<double> masses);

    static FiniteDistribution uniform(std::size_t n);
    static FiniteDistribution point(std::size_t n, std::size_t outcome);

    std::size_t size() const { return masses_.size(); }
    double mass(std::size_t i) const { return masses_.at(i); }
    const std::vector<double>& masses() const { return masses_; }

    bool in_support(std::size_t i) const { return masses_.at(i) > 0.0; }

private:
    std::vector<double> masses_;
};

// All logarithms are base 2; divergences are measured in bits.

double entropy(const FiniteDistribution& mu);
double kl(const FiniteDistribution& mu, const FiniteDistribution& nu);
double l1(const FiniteDistribution& mu, const FiniteDistribution& nu);

/// Upper bound sqrt(2 ln2 * d) on the L1 distance given a KL divergence d.
double pinsker(double d);

/// Binary KL divergence K_y(x) = x log(x/y) + (1-x) log((1-x)/(1-y)),
/// y in (0,1), x in [0,1]. Convex in x, decreasing on [0,y], increasing on
/// [y,1]; K_y(0) = log(1/(1-y)), K_y(y) = 0, K_y(1) = log(1/y).
double K(double y, double x);

/// Inverse of K_y restricted to [0,y]. Saturates to 0 for t > K_y(0).
double K_inv_left(double y, double t);

/// Inverse of K_y restricted to [y,1]. Saturates to 1 for t > K_y(1).
double K_inv_right(double y, double t);

/// q-ary entropy h_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x).
/// Satisfies K(1/q, x) = (1 - h_q(1-x)) log2 q.
double q_entropy(int q, double x);

/// Per-outcome intervals [K_inv_left(nu(i),d), K_inv_right(nu(i),d)] that
/// contain mu(i) for every mu with kl(mu,nu) <= d. Requires 0 < nu(i) < 1.
std::vector<std::pair<double, double>> klem_bounds(const FiniteDistribution& nu, double d);

/// r * f(b/r) for a convex decreasing f. The hypotheses on f are spot-checked
/// on a 1001-point grid; a violation is an error.
double direct_product_bound(const std::function<double(double)>& f, int r, double b);

struct BoundResult {
    double value = 0.0;
    bool degenerate = false; // a saturation convention fired
    std::string formula_id;
};

/// 2^(b - K_{g/(1+g)}((a+g)/(1+g)) r) with g = s^2/t^2 and a = eps/t, clamped
/// to 1. A clamped (vacuous) bound is flagged degenerate.
BoundResult martingale_failure_prob(double t, double s, double eps, int r, double b);

struct ChernoffPair {
    double lower = 0.0; // = upper / (n+1); valid for integral (p+eps)n
    double upper = 0.0; // 2^(-K_p(p+eps) n)
};

ChernoffPair chernoff_pair(double p, double eps, int n);

/// exp(-t^2 n / (2 d^2)).
double azuma_simple(double d, double t, int n);

// Named bound formulas. Each checks its theorem's domain and reports the
// violated condition on error.

BoundResult sg_lower(int q, double alpha, double n);
BoundResult antisg_lower(int q, double alpha, double n);
BoundResult bsg_lower(double s, double t, double alpha, double n);
BoundResult rmg_lower(double eps, double a_inf_norm, double n);
BoundResult antisg_upper(int q, double alpha, double n);
BoundResult paging_lower(int k, double c, double eps, double n);
BoundResult hsgg_exponent(int k, double n, double b);
BoundResult lor_prob(double b, double m, double r);
BoundResult techlemma_bound(double t, double m_cost, double r, double b);

/// Harmonic number H_k = sum_{i=1..k} 1/i.
double harmonic(int k);

/// Evaluate a named bound by id with named parameters (the CLI entry point).
/// Known ids: sg_lower, antisg_lower, bsg_lower, rmg_lower, antisg_upper,
/// paging_lower, hsgg_exponent, lor_prob, techlemma_bound.
BoundResult eval_bound(const std::string& formula_id, const std::map<std::string, double>& params);

/// Parameter names expected by eval_bound for each formula id.
std::vector<std::string> bound_parameter_names(const std::string& formula_id);

/// All formula ids known to eval_bound.
std::vector<std::string> bound_formula_ids();

} // namespace adv::info
