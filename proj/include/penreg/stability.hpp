// Numerical stability under 1% perturbations of the regressors: the
// perturbation step and the Monte Carlo report of relative coefficient
// changes.
#pragma once

#include <cstdint>

#include "penreg/estimation.hpp"

namespace penreg {

struct PerturbationReport {
    double k = 0.0;
    double h = 0.0;
    std::size_t iterations = 0;
    // Per-iteration 100 * ||beta - beta_p|| / ||beta||.
    Vector percent_changes;
    double mean = 0.0;
    double p025 = 0.0;
    double p975 = 0.0;
    std::uint64_t seed = 0;
    // Iterations discarded for a singular refit and redrawn.
    std::size_t redraws = 0;
};

// x + 0.01 * p * ||x|| / ||p||, so ||result - x|| = 0.01 * ||x||.
Vector perturb_vector(const Vector& x, const Vector& p);

// Perturbs every non-intercept regressor column with an independent
// standard-normal direction, refits, and records the percent change;
// iteration i draws from the stream keyed (seed, i).
PerturbationReport stability_analysis(const Dataset& data,
                                      const AlphaVector& alpha,
                                      AlphaPolicy alpha_policy,
                                      const PenaltyConfig& config,
                                      std::size_t iterations,
                                      std::uint64_t seed,
                                      std::size_t threads = 1);

} // namespace penreg
