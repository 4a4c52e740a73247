// Monte Carlo comparison of OLS, ridge, and shrunk-fit mean squared
// errors on correlated designs, with case classification and
// multicollinearity profiling.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "penreg/risk.hpp"
#include "penreg/rng.hpp"

namespace penreg {

// One replication's cell: every field drawn from the finite sets below.
struct SimulationConfig {
    // Design columns including the intercept; one of {3, 4, 5, 6}.
    std::size_t p = 3;
    // Latent correlation control; one of {0.96, 0.97, 0.98, 0.99}.
    double xi = 0.99;
    // Latent column standard deviation; one of {0.01, 0.1, 5, 10, 15}.
    double sigma_w = 10.0;
    // Rows; one of {30, 40, ..., 200}.
    std::size_t n = 100;
};

void validate(const SimulationConfig& config);

struct GeneratedModel {
    Dataset data;
    Vector beta_true;
};

// Latent columns W_2..W_p with per-column means drawn from
// {0, +-2, ..., +-10}; regressor i is sqrt(1 - xi^2) W_i + W_p, so the
// last one collapses to (1 + sqrt(1 - xi^2)) W_p and pairs correlate at
// 1 / (2 - xi^2) (1 / sqrt(2 - xi^2) against the last); y = X beta + u
// with standard-normal noise and beta entries drawn from {+-1, ..., +-5}.
GeneratedModel generate_design(const SimulationConfig& config, Rng& rng);

enum class CaseLabel { A, B, C, D, E, F, unresolved };

// Ordering of the three MSE values; unresolved when a grid minimum is
// absent for ridge or the shrunk fit.
CaseLabel classify(double mse_ols, const std::optional<double>& mse_ridge,
                   const std::optional<double>& mse_pen);

std::string to_string(CaseLabel label);

struct SimulationRecord {
    SimulationConfig config;
    double mse_ols = 0.0;
    std::optional<double> mse_ridge_min;
    std::optional<double> mse_pen_min;
    Uniqueness ridge_uniqueness = Uniqueness::none;
    Uniqueness pen_uniqueness = Uniqueness::none;
    double min_cv = 0.0;
    double max_vif = 0.0;
    double cn = 0.0;
    CaseLabel label = CaseLabel::unresolved;
};

// Values fed into the MSE curves of each replication: the coefficient
// and noise-variance estimates a practitioner would compute from the
// sample, or the generating truths (beta_true, sigma^2 = 1).
enum class MsePlugin { estimated, truth };

MsePlugin mse_plugin_from_string(const std::string& name);
std::string to_string(MsePlugin plug_in);

struct SimulationPlan {
    std::size_t replications = 1440;
    double grid_stop = 1.0;
    double grid_step = 0.01;
    MsePlugin plug_in = MsePlugin::truth;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
};

struct ProfileRow {
    double min = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;
};

struct QuartileRow {
    double q1 = 0.0;
    double mean = 0.0;
    double q3 = 0.0;
};

struct CaseSummary {
    CaseLabel label = CaseLabel::unresolved;
    std::size_t count = 0;
    QuartileRow min_cv;
    QuartileRow max_vif;
    QuartileRow cn;
};

struct SimulationSummary {
    SimulationPlan plan;
    std::vector<SimulationRecord> records;
    std::array<std::size_t, 7> counts{};
    std::size_t resolved = 0;
    std::size_t redraws = 0;
    ProfileRow profile_min_cv;
    ProfileRow profile_max_vif;
    ProfileRow profile_cn;
    // Rows ordered A..F then unresolved; quartiles filled when count > 0.
    std::vector<CaseSummary> cases;
};

// Replication r draws its cell, latent columns, coefficients, and noise
// from the stream keyed (plan.seed, r); the same seed therefore yields
// the same data under every grid stop.
SimulationSummary run_simulation(const SimulationPlan& plan);

} // namespace penreg
