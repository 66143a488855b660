#pragma once

#include <functional>
#include <vector>

#include "advicelab/infotheory.hpp"
#include "advicelab/problem.hpp"
#include "advicelab/rng.hpp"

namespace adv {

/// One round's worth of requests.
using Block = std::vector<Token>;

/// A finite distribution over request blocks.
struct BlockDistribution {
    std::vector<Block> support;
    info::FiniteDistribution probs;

    const Block& sample(RngStream& rng) const {
        return support.at(rng.next_index(probs.masses()));
    }
};

/// A flat distribution over whole inputs.
struct InputDistribution {
    std::vector<InputSequence> support;
    info::FiniteDistribution probs;
};

/// An r-round product distribution: independent per-round block choices, an
/// assembler that turns a block tuple into a valid input, and per-round cost
/// functions evaluated on (blocks, answers).
struct RoundDistribution {
    int rounds = 0;
    std::vector<BlockDistribution> per_round;

    std::function<InputSequence(const std::vector<Block>&)> assemble;

    /// Cost attributed to round i given the full drawn blocks and the
    /// algorithm's full answer sequence.
    std::function<double(int round, const std::vector<Block>&, const std::vector<Token>& answers)>
        round_cost;

    std::vector<Block> sample_blocks(RngStream& rng) const;

    /// Number of block tuples in the support (product of per-round sizes).
    /// Saturates at the cap argument to avoid overflow.
    std::uint64_t support_size(std::uint64_t cap) const;

    /// Visit every block tuple with its probability.
    void for_each_tuple(
        const std::function<void(const std::vector<Block>&, double prob)>& fn) const;

    /// Flatten into an input distribution (obeys the same support cap).
    InputDistribution flatten(std::uint64_t cap) const;
};

} // namespace adv
