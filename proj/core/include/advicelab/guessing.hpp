#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "advicelab/algorithm.hpp"
#include "advicelab/caps.hpp"
#include "advicelab/distribution.hpp"
#include "advicelab/games.hpp"
#include "advicelab/problem.hpp"

namespace adv::guessing {

enum class Variant { sgkh, anti, bsg };

/// One string guessing instance. Characters are 0..q-1; for the weighted
/// binary variant the alphabet is {0,1} and (s,t) are the mistake weights
/// (answering 0 on a 1 costs t, answering 1 on a 0 costs s).
struct GuessInstance {
    Variant variant = Variant::sgkh;
    int q = 2;
    std::vector<Token> x;
    double s = 1.0;
    double t = 1.0;

    std::size_t n() const { return x.size(); }
    void validate() const;
};

games::CostMatrix cost_matrix(const GuessInstance& instance);
games::CostMatrix cost_matrix(Variant variant, int q, double s = 1.0, double t = 1.0);

/// The guessing game as an online problem (known history: the algorithm sees
/// x_{i-1} before answering y_i).
OnlineProblem guess_problem(Variant variant, int q, double s = 1.0, double t = 1.0);

/// Total cost of one run.
double sg_simulate(const GuessInstance& instance, const DeterministicAlgorithm& alg,
                   const BitString& advice = BitString());
double sg_simulate(const GuessInstance& instance, const AdviceAlgorithm& alg);

/// n independent uniform characters with the variant's per-round cost.
RoundDistribution uniform_hard_distribution(Variant variant, int q, int n, double s = 1.0,
                                            double t = 1.0);

// --- Anti-covering codes ----------------------------------------------------

struct AntiCoveringCode {
    int q = 2;
    int n = 0;
    int radius = 0;                        // required Hamming distance
    std::vector<std::vector<Token>> codewords; // sorted lexicographically

    std::size_t size() const { return codewords.size(); }
};

/// Exhaustive check that every string in [q]^n has a codeword at Hamming
/// distance >= radius.
bool verify_anticover(const AntiCoveringCode& code, const Caps& caps = Caps::defaults());

/// Sample floor((n+1) 2^(K(1/q,alpha) n) ln(q) n + 1) codewords uniformly and
/// verify radius ceil((1-alpha) n) exhaustively, retrying with fresh seeds on
/// failure. Requires 0 < alpha < 1/q and q^n within the enumeration cap.
AntiCoveringCode build_anticover(int q, int n, double alpha, std::uint64_t seed,
                                 int retry_budget = -1, const Caps& caps = Caps::defaults());

/// The advice algorithm for anti string guessing backed by a verified code:
/// the oracle writes the index (in ceil(log2 |code|) bits) of the first
/// codeword at distance >= radius; the body replays that codeword.
AdviceAlgorithm anticover_alg(const AntiCoveringCode& code);

/// Expected size bound from the code construction, for the given parameters.
double anticover_size_bound(int q, int n, double alpha);

// Serialization: newline-separated base-q strings, sorted.
std::string code_to_text(const AntiCoveringCode& code);
AntiCoveringCode code_from_text(int q, int n, int radius, const std::string& text);

} // namespace adv::guessing
