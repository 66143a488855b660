#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace adv {

/// Pairwise (cascade) summation. Used as the fixed reduction order for every
/// floating-point accumulation whose result must not depend on the execution
/// schedule.
inline double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& values) {
    return pairwise_sum(std::span<const double>(values.data(), values.size()));
}

struct MeanWithError {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Sample mean and standard error of the mean, pairwise-summed.
inline MeanWithError mean_with_error(std::span<const double> values) {
    MeanWithError out;
    out.samples = values.size();
    if (values.empty()) return out;
    out.mean = pairwise_sum(values) / static_cast<double>(values.size());
    if (values.size() < 2) return out;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double d = values[i] - out.mean;
        sq[i] = d * d;
    }
    double var = pairwise_sum(sq) / static_cast<double>(values.size() - 1);
    out.std_error = std::sqrt(var / static_cast<double>(values.size()));
    return out;
}

} // namespace adv
