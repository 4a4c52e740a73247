// Bootstrap point and interval approximations for the fit coefficients
// and the goodness of fit at a fixed penalty.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "penreg/estimation.hpp"

namespace penreg {

struct BootstrapSummary {
    // "beta_1" .. "beta_p" or "gof".
    std::string statistic;
    std::size_t m = 0;
    // Full-sample value of the statistic.
    double theta_hat = 0.0;
    double theta_bar = 0.0;
    // Quasi-standard-deviation, divisor m - 1.
    double sigma_theta = 0.0;
    // theta_bar +/- 1.96 sigma_theta.
    std::pair<double, double> interval_normal{0.0, 0.0};
    // Type-7 sample percentiles at 0.025 and 0.975 of the stored draws.
    std::pair<double, double> interval_percentile{0.0, 0.0};
    std::uint64_t seed = 0;
    Vector draws;
};

struct BootstrapResult {
    std::vector<BootstrapSummary> coefficients;
    BootstrapSummary gof;
    AlphaPolicy alpha_policy = AlphaPolicy::fixed;
    PenaltyConfig config;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    // Resamples discarded for a singular cross-product and redrawn.
    std::size_t redraws = 0;
};

// m row-resamples with replacement; resample r draws from the stream
// keyed (seed, r), so results are independent of thread count.
BootstrapResult bootstrap(const Dataset& data, const AlphaVector& alpha,
                          AlphaPolicy alpha_policy, const PenaltyConfig& config,
                          std::size_t m, std::uint64_t seed,
                          std::size_t threads = 1);

} // namespace penreg
