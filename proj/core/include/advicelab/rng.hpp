#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace adv {

/// The raw mixing function: a SplitMix64 pass over (root, stream, counter).
inline std::uint64_t mix_u64(std::uint64_t root, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t z = root + 0x9E3779B97F4A7C15ull * (stream + 1);
    z += 0xBF58476D1CE4E5B9ull * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Counter-based deterministic random stream. Every draw is a pure function
/// of (root seed, stream id, counter), so trial i sees the same randomness no
/// matter how trials are scheduled or batched.
class RngStream {
public:
    RngStream(std::uint64_t root_seed, std::uint64_t stream_id)
        : root_(root_seed), stream_(stream_id) {}

    std::uint64_t next_u64() { return mix_u64(root_, stream_, counter_++); }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in {0, 1, ..., bound-1}; bound >= 1. Unbiased via rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("RngStream::next_below: bound must be >= 1");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < limit) return v % bound;
        }
    }

    /// Index drawn from a finite distribution given by `probs` (sum ~ 1).
    std::size_t next_index(const std::vector<double>& probs) {
        double u = next_double();
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return i;
        }
        return probs.empty() ? 0 : probs.size() - 1;
    }

    std::uint64_t root() const { return root_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t root_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

} // namespace adv
