// Mean squared error of the penalized estimator, its additive gap to the
// ridge MSE, asymptotes, and the grid minimizer.
#pragma once

#include <optional>

#include "penreg/estimation.hpp"

namespace penreg {

struct MseBreakdown {
    double k = 0.0;
    double h = 0.0;
    double variance_term = 0.0;
    double bias_term = 0.0;
    double total = 0.0;
    double ridge_mse = 0.0;
    double s_term = 0.0;
};

enum class Uniqueness { none, unique, multiple };

struct GridMinimum {
    std::optional<double> k_star;
    double mse_star = 0.0;
    Uniqueness uniqueness = Uniqueness::none;
    Vector grid;
};

// total = trace(sigma2 Z X^T X Z) + ||(Z X^T X - I) beta + k h Z alpha||^2
// with the plug-in beta and sigma2; s_term follows its own closed form
// 2 k h beta^T (Z X^T X - I)^T Z alpha + k^2 h^2 alpha^T Z^T Z alpha so the
// decomposition total = ridge_mse + s_term is a genuine cross-check.
MseBreakdown mse(const Dataset& data, const AlphaVector& alpha,
                 const PenaltyConfig& config, const Vector& beta_plug,
                 double sigma2);

// Large-k limit beta^T beta - 2 h beta^T alpha + h^2 alpha^T alpha.
double mse_asymptote(const AlphaVector& alpha, const Vector& beta_plug,
                     double h);

// Spectral projections for cheap MSE evaluation across a k grid.
struct SpectralMse {
    Vector lambda;
    Vector e;
    Vector b;
    double sigma2 = 0.0;

    double total(double k, double h) const;
};

SpectralMse spectral_mse(const DesignMoments& m, const AlphaVector& alpha,
                         const Vector& beta_plug, double sigma2);

// Scans interior grid points for strict local minima of the MSE curve and
// returns the smallest-index one; absence is a valid outcome.
GridMinimum minimize_mse_grid(const Dataset& data, const AlphaVector& alpha,
                              double h, const Vector& grid,
                              const Vector& beta_plug, double sigma2);

// Uniform grid start:step:stop inclusive of both ends (within rounding).
Vector uniform_grid(double start, double stop, double step);

std::string to_string(Uniqueness u);

} // namespace penreg
