#include "advicelab/caps.hpp"

#include <cstdlib>
#include <string>

namespace adv {

namespace {

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return std::stoull(std::string(v));
}

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return std::stoi(std::string(v));
}

Caps load_caps() {
    Caps c;
    c.max_enum_inputs = env_u64("ADVICELAB_MAX_ENUM_INPUTS", c.max_enum_inputs);
    c.max_enum_algorithms = env_u64("ADVICELAB_MAX_ENUM_ALGORITHMS", c.max_enum_algorithms);
    c.max_advice_bits = env_int("ADVICELAB_MAX_ADVICE_BITS", c.max_advice_bits);
    c.partition_dp_max_support = env_int("ADVICELAB_PARTITION_DP_MAX_SUPPORT", c.partition_dp_max_support);
    c.max_exact_support = env_u64("ADVICELAB_MAX_EXACT_SUPPORT", c.max_exact_support);
    c.anticover_retry_budget = env_int("ADVICELAB_ANTICOVER_RETRY_BUDGET", c.anticover_retry_budget);
    c.exact_game_max_dim = env_int("ADVICELAB_EXACT_GAME_MAX_DIM", c.exact_game_max_dim);
    c.binpack_exact_max_items = env_int("ADVICELAB_BINPACK_EXACT_MAX_ITEMS", c.binpack_exact_max_items);
    return c;
}

} // namespace

const Caps& Caps::defaults() {
    static const Caps caps = load_caps();
    return caps;
}

} // namespace adv
