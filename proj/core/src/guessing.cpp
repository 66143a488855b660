#include "advicelab/guessing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "advicelab/engine.hpp"
#include "advicelab/infotheory.hpp"
#include "advicelab/rng.hpp"

namespace adv::guessing {

void GuessInstance::validate() const {
    if (q < 2) throw std::invalid_argument("GuessInstance: q must be >= 2");
    if (variant == Variant::bsg) {
        if (q != 2) throw std::invalid_argument("GuessInstance: the weighted variant is binary");
        if (!(s > 0.0 && s <= t))
            throw std::invalid_argument("GuessInstance: requires 0 < s <= t");
    }
    for (Token c : x)
        if (c < 0 || c >= q)
            throw std::invalid_argument("GuessInstance: character out of range");
}

games::CostMatrix cost_matrix(Variant variant, int q, double s, double t) {
    switch (variant) {
        case Variant::sgkh: return games::CostMatrix::sgkh(q);
        case Variant::anti: return games::CostMatrix::identity(q);
        case Variant::bsg: return games::CostMatrix::bsg(s, t);
    }
    throw std::logic_error("cost_matrix: unknown variant");
}

games::CostMatrix cost_matrix(const GuessInstance& instance) {
    return cost_matrix(instance.variant, instance.q, instance.s, instance.t);
}

namespace {

std::string variant_name(Variant v, int q) {
    switch (v) {
        case Variant::sgkh: return "sgkh_q" + std::to_string(q);
        case Variant::anti: return "antisg_q" + std::to_string(q);
        case Variant::bsg: return "bsg";
    }
    return "guess";
}

} // namespace

OnlineProblem guess_problem(Variant variant, int q, double s, double t) {
    return games::rmg_problem(cost_matrix(variant, q, s, t), variant_name(variant, q));
}

double sg_simulate(const GuessInstance& instance, const DeterministicAlgorithm& alg,
                   const BitString& advice) {
    instance.validate();
    OnlineProblem p = guess_problem(instance.variant, instance.q, instance.s, instance.t);
    return run(p, alg, games::rmg_input(instance.x), advice).total;
}

double sg_simulate(const GuessInstance& instance, const AdviceAlgorithm& alg) {
    instance.validate();
    OnlineProblem p = guess_problem(instance.variant, instance.q, instance.s, instance.t);
    return run_advice(p, alg, games::rmg_input(instance.x)).total;
}

RoundDistribution uniform_hard_distribution(Variant variant, int q, int n, double s, double t) {
    return games::rmg_uniform_distribution(cost_matrix(variant, q, s, t), n);
}

namespace {

std::uint64_t checked_pow(int q, int n, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= static_cast<std::uint64_t>(q);
        if (total > cap) return cap + 1;
    }
    return total;
}

int hamming(const std::vector<Token>& a, const std::vector<Token>& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]) ? 1 : 0;
    return d;
}

std::vector<Token> nth_string(std::uint64_t index, int q, int n) {
    std::vector<Token> s(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = static_cast<Token>(index % static_cast<std::uint64_t>(q));
        index /= static_cast<std::uint64_t>(q);
    }
    return s;
}

} // namespace

bool verify_anticover(const AntiCoveringCode& code, const Caps& caps) {
    std::uint64_t total = checked_pow(code.q, code.n, caps.max_enum_inputs);
    if (total > caps.max_enum_inputs)
        throw std::runtime_error("verify_anticover: q^n exceeds the enumeration cap");
    // Bit-packed fast path for binary codes.
    if (code.q == 2 && code.n <= 63) {
        std::vector<std::uint64_t> packed;
        packed.reserve(code.codewords.size());
        for (const auto& w : code.codewords) {
            std::uint64_t v = 0;
            for (Token c : w) v = (v << 1) | static_cast<std::uint64_t>(c);
            packed.push_back(v);
        }
        for (std::uint64_t x = 0; x < total; ++x) {
            bool covered = false;
            for (std::uint64_t y : packed) {
                if (std::popcount(x ^ y) >= code.radius) {
                    covered = true;
                    break;
                }
            }
            if (!covered) return false;
        }
        return true;
    }
    for (std::uint64_t i = 0; i < total; ++i) {
        std::vector<Token> x = nth_string(i, code.q, code.n);
        bool covered = false;
        for (const auto& y : code.codewords) {
            if (hamming(x, y) >= code.radius) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

double anticover_size_bound(int q, int n, double alpha) {
    if (q < 2) throw std::invalid_argument("anticover_size_bound: q must be >= 2");
    if (!(alpha > 0.0 && alpha < 1.0 / q))
        throw std::invalid_argument("anticover_size_bound: requires 0 < alpha < 1/q");
    return std::exp2(info::K(1.0 / q, alpha) * n) * (n + 1.0) * std::log(static_cast<double>(q)) * n +
           1.0;
}

AntiCoveringCode build_anticover(int q, int n, double alpha, std::uint64_t seed, int retry_budget,
                                 const Caps& caps) {
    if (n < 1) throw std::invalid_argument("build_anticover: n must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0 / q))
        throw std::invalid_argument("build_anticover: requires 0 < alpha < 1/q");
    std::uint64_t total = checked_pow(q, n, caps.max_enum_inputs);
    if (total > caps.max_enum_inputs)
        throw std::runtime_error("build_anticover: q^n exceeds the verification cap");
    if (retry_budget < 0) retry_budget = caps.anticover_retry_budget;

    auto m_real = anticover_size_bound(q, n, alpha);
    auto m = static_cast<std::uint64_t>(std::floor(m_real));
    // Fractional radius rounded up; this keeps the cost guarantee <= alpha*n.
    int radius = static_cast<int>(std::ceil((1.0 - alpha) * n - 1e-12));

    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        RngStream rng(seed, static_cast<std::uint64_t>(attempt));
        AntiCoveringCode code;
        code.q = q;
        code.n = n;
        code.radius = radius;
        code.codewords.reserve(m);
        for (std::uint64_t i = 0; i < m; ++i)
            code.codewords.push_back(nth_string(rng.next_below(total), q, n));
        std::sort(code.codewords.begin(), code.codewords.end());
        code.codewords.erase(std::unique(code.codewords.begin(), code.codewords.end()),
                             code.codewords.end());
        if (verify_anticover(code, caps)) return code;
    }
    throw std::runtime_error("build_anticover: retry budget exhausted (q=" + std::to_string(q) +
                             ", n=" + std::to_string(n) + ", alpha=" + std::to_string(alpha) + ")");
}

AdviceAlgorithm anticover_alg(const AntiCoveringCode& code) {
    if (code.codewords.empty()) throw std::invalid_argument("anticover_alg: empty code");
    auto shared = std::make_shared<const AntiCoveringCode>(code);
    const int bits = bits_for_count(code.codewords.size());

    AdviceAlgorithm alg;
    alg.name = "anticover_q" + std::to_string(code.q) + "_n" + std::to_string(code.n);
    alg.advice_length = [bits](std::size_t) { return bits; };
    alg.oracle = [shared, bits](const InputSequence& input) {
        // First codeword (in lexicographic order) meeting the distance bound.
        for (std::size_t j = 0; j < shared->codewords.size(); ++j) {
            if (hamming(input.requests, shared->codewords[j]) >= shared->radius)
                return BitString::from_uint(j, bits);
        }
        throw std::logic_error("anticover_alg: code does not cover an input (unverified code?)");
    };
    alg.body.name = alg.name + "_body";
    alg.body.decide = [shared, bits](const DecideContext& ctx) {
        std::size_t j = 0;
        if (bits > 0 && ctx.advice && ctx.advice->size() >= static_cast<std::size_t>(bits))
            j = static_cast<std::size_t>(ctx.advice->to_uint(0, bits));
        if (j >= shared->codewords.size()) j = shared->codewords.size() - 1;
        return shared->codewords[j].at(ctx.past_requests.size());
    };
    return alg;
}

std::string code_to_text(const AntiCoveringCode& code) {
    std::ostringstream out;
    for (const auto& w : code.codewords) {
        for (Token c : w) {
            if (code.q <= 10)
                out << c;
            else
                out << c << ' ';
        }
        out << '\n';
    }
    return out.str();
}

AntiCoveringCode code_from_text(int q, int n, int radius, const std::string& text) {
    AntiCoveringCode code;
    code.q = q;
    code.n = n;
    code.radius = radius;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<Token> w;
        if (q <= 10) {
            for (char c : line) {
                if (c < '0' || c >= '0' + q)
                    throw std::invalid_argument("code_from_text: bad character");
                w.push_back(c - '0');
            }
        } else {
            std::istringstream ls(line);
            Token c;
            while (ls >> c) w.push_back(c);
        }
        if (static_cast<int>(w.size()) != n)
            throw std::invalid_argument("code_from_text: wrong codeword length");
        code.codewords.push_back(std::move(w));
    }
    std::sort(code.codewords.begin(), code.codewords.end());
    return code;
}

} // namespace adv::guessing
