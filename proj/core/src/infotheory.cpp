#include "advicelab/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "advicelab/numeric.hpp"

namespace adv::info {

namespace {

constexpr double kMassTolerance = 1e-12;
constexpr double kBisectTolerance = 1e-12;
constexpr int kBisectMaxIter = 200;

double log2_ratio(double a, double b) { return std::log2(a / b); }

} // namespace

FiniteDistribution::FiniteDistribution(std::vector<double> masses) : masses_(std::move(masses)) {
    if (masses_.empty()) throw std::invalid_argument("FiniteDistribution: empty support set");
    double sum = 0.0;
    for (double m : masses_) {
        if (m < 0.0) throw std::invalid_argument("FiniteDistribution: negative mass");
        sum += m;
    }
    if (std::abs(sum - 1.0) > kMassTolerance)
        throw std::invalid_argument("FiniteDistribution: masses sum to " + std::to_string(sum));
}

FiniteDistribution FiniteDistribution::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("FiniteDistribution::uniform: n must be >= 1");
    return FiniteDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FiniteDistribution FiniteDistribution::point(std::size_t n, std::size_t outcome) {
    std::vector<double> m(n, 0.0);
    m.at(outcome) = 1.0;
    return FiniteDistribution(std::move(m));
}

double entropy(const FiniteDistribution& mu) {
    std::vector<double> terms;
    terms.reserve(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        double p = mu.mass(i);
        if (p > 0.0) terms.push_back(p * std::log2(1.0 / p)); // 0 log 0 = 0
    }
    return pairwise_sum(terms);
}

double kl(const FiniteDistribution& mu, const FiniteDistribution& nu) {
    if (mu.size() != nu.size()) throw std::invalid_argument("kl: mismatched outcome sets");
    std::vector<double> terms;
    terms.reserve(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        double p = mu.mass(i);
        if (p == 0.0) continue; // 0 log(0/q) = 0
        double q = nu.mass(i);
        if (q == 0.0)
            throw std::domain_error("kl: only defined if supp(mu) is contained in supp(nu)");
        terms.push_back(p * log2_ratio(p, q));
    }
    return pairwise_sum(terms);
}

double l1(const FiniteDistribution& mu, const FiniteDistribution& nu) {
    if (mu.size() != nu.size()) throw std::invalid_argument("l1: mismatched outcome sets");
    std::vector<double> terms(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) terms[i] = std::abs(mu.mass(i) - nu.mass(i));
    return pairwise_sum(terms);
}

double pinsker(double d) {
    if (d < 0.0) throw std::domain_error("pinsker: divergence must be >= 0");
    return std::sqrt(2.0 * std::log(2.0) * d);
}

double K(double y, double x) {
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("K: y must lie in (0,1)");
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("K: x must lie in [0,1]");
    double term0 = (x == 0.0) ? 0.0 : x * log2_ratio(x, y);
    double term1 = (x == 1.0) ? 0.0 : (1.0 - x) * log2_ratio(1.0 - x, 1.0 - y);
    return term0 + term1;
}

namespace {

// Bisection for K on a monotone branch [lo, hi]; `increasing` tells the
// direction of K along the branch.
double invert_branch(double y, double t, double lo, double hi, bool increasing) {
    for (int it = 0; it < kBisectMaxIter && hi - lo > kBisectTolerance; ++it) {
        double mid = 0.5 * (lo + hi);
        double v = K(y, mid);
        bool go_right = increasing ? (v < t) : (v > t);
        if (go_right)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double K_inv_left(double y, double t) {
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("K_inv_left: y must lie in (0,1)");
    if (t < 0.0) throw std::domain_error("K_inv_left: t must be >= 0");
    if (t == 0.0) return y;
    if (t >= K(y, 0.0)) return 0.0; // saturation convention
    return invert_branch(y, t, 0.0, y, /*increasing=*/false);
}

double K_inv_right(double y, double t) {
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("K_inv_right: y must lie in (0,1)");
    if (t < 0.0) throw std::domain_error("K_inv_right: t must be >= 0");
    if (t == 0.0) return y;
    if (t >= K(y, 1.0)) return 1.0; // saturation convention
    return invert_branch(y, t, y, 1.0, /*increasing=*/true);
}

double q_entropy(int q, double x) {
    if (q < 2) throw std::domain_error("q_entropy: q must be >= 2");
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("q_entropy: x must lie in [0,1]");
    double lq = std::log2(static_cast<double>(q));
    double t0 = x * std::log2(static_cast<double>(q - 1)) / lq;
    double t1 = (x == 0.0) ? 0.0 : -x * std::log2(x) / lq;
    double t2 = (x == 1.0) ? 0.0 : -(1.0 - x) * std::log2(1.0 - x) / lq;
    return t0 + t1 + t2;
}

std::vector<std::pair<double, double>> klem_bounds(const FiniteDistribution& nu, double d) {
    if (d < 0.0) throw std::domain_error("klem_bounds: divergence budget must be >= 0");
    std::vector<std::pair<double, double>> out;
    out.reserve(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) {
        double y = nu.mass(i);
        if (!(y > 0.0 && y < 1.0))
            throw std::domain_error("klem_bounds: boundary mass at outcome " + std::to_string(i));
        out.emplace_back(K_inv_left(y, d), K_inv_right(y, d));
    }
    return out;
}

double direct_product_bound(const std::function<double(double)>& f, int r, double b) {
    if (r < 1) throw std::domain_error("direct_product_bound: r must be >= 1");
    if (b < 0.0) throw std::domain_error("direct_product_bound: b must be >= 0");
    // Spot-check convexity and monotonicity on [0, g] where g covers b/r.
    const int kGrid = 1001;
    double hi = std::max(1.0, b);
    std::vector<double> vals(kGrid);
    for (int i = 0; i < kGrid; ++i)
        vals[static_cast<std::size_t>(i)] = f(hi * static_cast<double>(i) / (kGrid - 1));
    const double slack = 1e-9;
    for (int i = 0; i + 1 < kGrid; ++i)
        if (vals[static_cast<std::size_t>(i + 1)] > vals[static_cast<std::size_t>(i)] + slack)
            throw std::domain_error("direct_product_bound: f fails the decreasing check");
    for (int i = 0; i + 2 < kGrid; ++i) {
        double mid = vals[static_cast<std::size_t>(i + 1)];
        double chord = 0.5 * (vals[static_cast<std::size_t>(i)] + vals[static_cast<std::size_t>(i + 2)]);
        if (mid > chord + slack)
            throw std::domain_error("direct_product_bound: f fails the convexity check");
    }
    return static_cast<double>(r) * f(b / static_cast<double>(r));
}

BoundResult martingale_failure_prob(double t, double s, double eps, int r, double b) {
    if (t < 0.0 || s < 0.0) throw std::domain_error("martingale_failure_prob: t and s must be >= 0");
    if (!(eps > 0.0 && eps <= t))
        throw std::domain_error("martingale_failure_prob: requires 0 < eps <= t");
    if (r < 1) throw std::domain_error("martingale_failure_prob: r must be >= 1");
    double gamma = (s * s) / (t * t);
    double alpha = eps / t;
    double y = gamma / (1.0 + gamma);
    double x = (alpha + gamma) / (1.0 + gamma);
    if (!(y > 0.0 && y < 1.0))
        throw std::domain_error("martingale_failure_prob: degenerate variance (s must be > 0)");
    double exponent = b - K(y, x) * static_cast<double>(r);
    BoundResult res;
    res.formula_id = "martingale_failure_prob";
    if (exponent >= 0.0) {
        res.value = 1.0;
        res.degenerate = true; // vacuous bound
    } else {
        res.value = std::exp2(exponent);
    }
    return res;
}

ChernoffPair chernoff_pair(double p, double eps, int n) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("chernoff_pair: requires 0 < p < 1");
    if (!(eps > 0.0)) throw std::domain_error("chernoff_pair: requires eps > 0");
    if (p + eps > 1.0 + 1e-15) throw std::domain_error("chernoff_pair: requires p + eps <= 1");
    if (n < 1) throw std::domain_error("chernoff_pair: n must be >= 1");
    double x = std::min(p + eps, 1.0);
    ChernoffPair out;
    out.upper = std::exp2(-K(p, x) * static_cast<double>(n));
    out.lower = out.upper / static_cast<double>(n + 1);
    return out;
}

double azuma_simple(double d, double t, int n) {
    if (!(d > 0.0)) throw std::domain_error("azuma_simple: d must be > 0");
    if (t < 0.0) throw std::domain_error("azuma_simple: t must be >= 0");
    if (n < 1) throw std::domain_error("azuma_simple: n must be >= 1");
    return std::exp(-(t * t) / (2.0 * d * d) * static_cast<double>(n));
}

double harmonic(int k) {
    if (k < 1) throw std::domain_error("harmonic: k must be >= 1");
    std::vector<double> terms(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) terms[static_cast<std::size_t>(i - 1)] = 1.0 / static_cast<double>(i);
    return pairwise_sum(terms);
}

namespace {

BoundResult make_bound(const char* id, double value, bool degenerate = false) {
    BoundResult r;
    r.formula_id = id;
    r.value = value;
    r.degenerate = degenerate;
    return r;
}

} // namespace

BoundResult sg_lower(int q, double alpha, double n) {
    if (q < 2) throw std::domain_error("sg_lower: q must be >= 2");
    double vq = static_cast<double>(q - 1) / static_cast<double>(q);
    if (!(alpha > 0.0 && alpha < vq))
        throw std::domain_error("sg_lower: requires 0 < alpha < (q-1)/q");
    return make_bound("sg_lower", K(1.0 / q, 1.0 - alpha) * n);
}

BoundResult antisg_lower(int q, double alpha, double n) {
    if (q < 2) throw std::domain_error("antisg_lower: q must be >= 2");
    if (!(alpha > 0.0 && alpha < 1.0 / q))
        throw std::domain_error("antisg_lower: requires 0 < alpha < 1/q");
    return make_bound("antisg_lower", K(1.0 / q, alpha) * n);
}

BoundResult bsg_lower(double s, double t, double alpha, double n) {
    if (!(s > 0.0 && s <= t)) throw std::domain_error("bsg_lower: requires 0 < s <= t");
    double v = s * t / (s + t);
    if (!(alpha > 0.0 && alpha < v))
        throw std::domain_error("bsg_lower: requires 0 < alpha < st/(s+t)");
    return make_bound("bsg_lower", K(s / (s + t), alpha / t) * n);
}

BoundResult rmg_lower(double eps, double a_inf_norm, double n) {
    if (!(a_inf_norm > 0.0)) throw std::domain_error("rmg_lower: matrix norm must be > 0");
    if (!(eps > 0.0 && eps <= a_inf_norm))
        throw std::domain_error("rmg_lower: requires 0 < eps <= max entry");
    return make_bound("rmg_lower", eps * eps * n / (2.0 * std::log(2.0) * a_inf_norm * a_inf_norm));
}

BoundResult antisg_upper(int q, double alpha, double n) {
    if (q < 2) throw std::domain_error("antisg_upper: q must be >= 2");
    if (!(alpha > 0.0 && alpha < 1.0 / q))
        throw std::domain_error("antisg_upper: requires 0 < alpha < 1/q");
    double code_size = (n + 1.0) * std::log(static_cast<double>(q)) * n + 1.0;
    return make_bound("antisg_upper", K(1.0 / q, alpha) * n + std::log2(code_size));
}

BoundResult paging_lower(int k, double c, double eps, double n) {
    if (k < 1) throw std::domain_error("paging_lower: k must be >= 1");
    double hk = harmonic(k);
    if (!(c > 1.0 && c < hk)) throw std::domain_error("paging_lower: requires 1 < c < H_k");
    if (!(eps > 0.0 && eps < (k + 1) * hk))
        throw std::domain_error("paging_lower: requires 0 < eps < (k+1) H_k");
    double x = c / ((k + 1) * hk - eps) + c / n;
    double y = 1.0 / static_cast<double>(k + 1);
    if (!(x > 0.0 && x < y))
        throw std::domain_error("paging_lower: cost rate must stay below 1/(k+1)");
    return make_bound("paging_lower", K(y, x) * n);
}

BoundResult hsgg_exponent(int k, double n, double b) {
    if (k < 2 || k % 2 != 0) throw std::domain_error("hsgg_exponent: k must be even and >= 2");
    double lg = std::log2(std::sqrt(static_cast<double>(k)) / 16.0);
    return make_bound("hsgg_exponent", b - 0.5 * lg * n);
}

BoundResult lor_prob(double b, double m, double r) {
    if (!(m > 1.0)) throw std::domain_error("lor_prob: m must be > 1");
    if (b < 0.0 || r < 0.0) throw std::domain_error("lor_prob: b and r must be >= 0");
    double value = std::exp2(b) * std::pow(1.0 - 1.0 / m, r);
    bool degenerate = value >= 1.0;
    return make_bound("lor_prob", degenerate ? 1.0 : value, degenerate);
}

BoundResult techlemma_bound(double t, double m_cost, double r, double b) {
    if (t < 0.0 || m_cost < 0.0) throw std::domain_error("techlemma_bound: t and M must be >= 0");
    if (!(r >= 1.0)) throw std::domain_error("techlemma_bound: r must be >= 1");
    if (b < 0.0) throw std::domain_error("techlemma_bound: b must be >= 0");
    return make_bound("techlemma_bound", r * (t - 2.0 * m_cost * std::sqrt(b / r)));
}

namespace {

double need(const std::map<std::string, double>& params, const std::string& key,
            const std::string& formula) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument(formula + ": missing parameter '" + key + "'");
    return it->second;
}

int need_int(const std::map<std::string, double>& params, const std::string& key,
             const std::string& formula) {
    return static_cast<int>(need(params, key, formula));
}

} // namespace

BoundResult eval_bound(const std::string& id, const std::map<std::string, double>& p) {
    if (id == "sg_lower") return sg_lower(need_int(p, "q", id), need(p, "alpha", id), need(p, "n", id));
    if (id == "antisg_lower")
        return antisg_lower(need_int(p, "q", id), need(p, "alpha", id), need(p, "n", id));
    if (id == "bsg_lower")
        return bsg_lower(need(p, "s", id), need(p, "t", id), need(p, "alpha", id), need(p, "n", id));
    if (id == "rmg_lower") return rmg_lower(need(p, "eps", id), need(p, "norm", id), need(p, "n", id));
    if (id == "antisg_upper")
        return antisg_upper(need_int(p, "q", id), need(p, "alpha", id), need(p, "n", id));
    if (id == "paging_lower")
        return paging_lower(need_int(p, "k", id), need(p, "c", id), need(p, "eps", id), need(p, "n", id));
    if (id == "hsgg_exponent")
        return hsgg_exponent(need_int(p, "k", id), need(p, "n", id), need(p, "b", id));
    if (id == "lor_prob") return lor_prob(need(p, "b", id), need(p, "m", id), need(p, "r", id));
    if (id == "techlemma_bound")
        return techlemma_bound(need(p, "t", id), need(p, "M", id), need(p, "r", id), need(p, "b", id));
    throw std::invalid_argument("eval_bound: unknown formula id '" + id + "'");
}

std::vector<std::string> bound_parameter_names(const std::string& id) {
    if (id == "sg_lower" || id == "antisg_lower" || id == "antisg_upper") return {"q", "alpha", "n"};
    if (id == "bsg_lower") return {"s", "t", "alpha", "n"};
    if (id == "rmg_lower") return {"eps", "norm", "n"};
    if (id == "paging_lower") return {"k", "c", "eps", "n"};
    if (id == "hsgg_exponent") return {"k", "n", "b"};
    if (id == "lor_prob") return {"b", "m", "r"};
    if (id == "techlemma_bound") return {"t", "M", "r", "b"};
    throw std::invalid_argument("bound_parameter_names: unknown formula id '" + id + "'");
}

std::vector<std::string> bound_formula_ids() {
    return {"sg_lower",     "antisg_lower", "bsg_lower",      "rmg_lower",      "antisg_upper",
            "paging_lower", "hsgg_exponent", "lor_prob",      "techlemma_bound"};
}

} // namespace adv::info
