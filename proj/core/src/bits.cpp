#include "advicelab/bits.hpp"

#include <stdexcept>

namespace adv {

BitString BitString::from_uint(std::uint64_t value, int width) {
    if (width < 0 || width > 64) throw std::invalid_argument("BitString::from_uint: bad width");
    if (width < 64 && (value >> width) != 0)
        throw std::invalid_argument("BitString::from_uint: value does not fit in width");
    std::vector<bool> bits(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i)
        bits[static_cast<std::size_t>(i)] = ((value >> (width - 1 - i)) & 1u) != 0;
    return BitString(std::move(bits));
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::uint64_t BitString::to_uint(std::size_t from, int width) const {
    if (width < 0 || width > 64) throw std::invalid_argument("BitString::to_uint: bad width");
    if (from + static_cast<std::size_t>(width) > bits_.size())
        throw std::out_of_range("BitString::to_uint: out of range");
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i)
        v = (v << 1) | (bits_[from + static_cast<std::size_t>(i)] ? 1u : 0u);
    return v;
}

BitString BitString::slice(std::size_t from, std::size_t len) const {
    if (from + len > bits_.size()) throw std::out_of_range("BitString::slice: out of range");
    return BitString(std::vector<bool>(bits_.begin() + static_cast<std::ptrdiff_t>(from),
                                       bits_.begin() + static_cast<std::ptrdiff_t>(from + len)));
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

BitString BitString::parse(const std::string& s) {
    std::vector<bool> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c == '0') bits.push_back(false);
        else if (c == '1') bits.push_back(true);
        else throw std::invalid_argument("BitString::parse: expected only 0/1");
    }
    return BitString(std::move(bits));
}

int bits_for_count(std::uint64_t count) {
    if (count == 0) throw std::invalid_argument("bits_for_count: count must be >= 1");
    int b = 0;
    while ((std::uint64_t{1} << b) < count) ++b;
    return b;
}

BitString self_delimiting_encode(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("self_delimiting_encode: n must be >= 1");
    int w = bits_for_count(n + 1); // ceil(log2(n+1))
    BitString out;
    for (int i = 0; i < w; ++i) out.push_back(true);
    out.push_back(false);
    out.append(BitString::from_uint(n, w));
    return out;
}

std::uint64_t self_delimiting_decode(const BitString& bits, std::size_t& pos) {
    std::size_t start = pos;
    int w = 0;
    while (pos < bits.size() && bits.bit(pos)) {
        ++w;
        ++pos;
    }
    if (pos >= bits.size() || bits.bit(pos))
        throw std::runtime_error("self_delimiting_decode: missing separator zero");
    ++pos; // the zero
    if (w == 0 || w > 64 || pos + static_cast<std::size_t>(w) > bits.size()) {
        pos = start;
        throw std::runtime_error("self_delimiting_decode: truncated payload");
    }
    std::uint64_t n = bits.to_uint(pos, w);
    pos += static_cast<std::size_t>(w);
    if (n == 0) {
        pos = start;
        throw std::runtime_error("self_delimiting_decode: zero payload");
    }
    // The width must be canonical for the value.
    if (bits_for_count(n + 1) != w) {
        pos = start;
        throw std::runtime_error("self_delimiting_decode: non-canonical width");
    }
    return n;
}

} // namespace adv
