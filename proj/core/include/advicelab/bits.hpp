#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adv {

/// Fixed-length bit string used for advice tapes. Bit 0 is the first bit
/// written by the oracle / read by the algorithm.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<bool> bits) : bits_(std::move(bits)) {}

    static BitString zeros(std::size_t n) { return BitString(std::vector<bool>(n, false)); }

    /// Encode `value` on exactly `width` bits, most significant bit first.
    static BitString from_uint(std::uint64_t value, int width);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    bool bit(std::size_t i) const { return bits_.at(i); }
    void push_back(bool b) { bits_.push_back(b); }
    void append(const BitString& other);

    /// Decode bits [from, from+width) as an unsigned integer, MSB first.
    std::uint64_t to_uint(std::size_t from, int width) const;

    BitString slice(std::size_t from, std::size_t len) const;

    std::string to_string() const;
    static BitString parse(const std::string& s);

    bool operator==(const BitString& other) const { return bits_ == other.bits_; }

private:
    std::vector<bool> bits_;
};

/// Number of bits needed to index `count` distinct items (count >= 1).
int bits_for_count(std::uint64_t count);

/// Self-delimiting encoding of a positive integer n: with w = ceil(log2(n+1)),
/// the code is w ones, a zero, then n in binary on w bits. The total length is
/// exactly 2w + 1.
BitString self_delimiting_encode(std::uint64_t n);

/// Inverse of self_delimiting_encode. Decodes the prefix starting at `pos`
/// and advances `pos` past it. Throws on a malformed prefix.
std::uint64_t self_delimiting_decode(const BitString& bits, std::size_t& pos);

} // namespace adv
