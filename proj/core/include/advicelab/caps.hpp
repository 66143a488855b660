#pragma once

#include <cstdint>

namespace adv {

// Enumeration limits. Exceeding a cap is an error, never silent sampling.
// Values can be overridden through environment variables of the form
// ADVICELAB_<FIELD> (upper-cased), e.g. ADVICELAB_MAX_ENUM_INPUTS.
struct Caps {
    std::uint64_t max_enum_inputs = 1u << 20;       // inputs enumerated per sweep
    std::uint64_t max_enum_algorithms = 10'000'000; // decision tables per sweep
    int max_advice_bits = 20;                       // cap on b for split/exact search
    int partition_dp_max_support = 18;              // support size for the subset DP
    std::uint64_t max_exact_support = 1u << 20;     // exact expected-cost support size
    int anticover_retry_budget = 10'000;
    int exact_game_max_dim = 4;                     // rational-mode game dimension
    int binpack_exact_max_items = 12;

    static const Caps& defaults();
};

} // namespace adv
