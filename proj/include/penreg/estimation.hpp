// Shrinkage target, penalized/ridge/OLS fitting, variance-covariance,
// goodness-of-fit, and the augmented-model construction.
#pragma once

#include <optional>
#include <utility>

#include "penreg/dataset.hpp"
#include "penreg/numerics.hpp"

namespace penreg {

// Shrinkage target: first entry the mean of y, the rest simple-regression
// slopes cov(y, X_i) / var(X_i) with population (divisor n) moments.
using AlphaVector = Vector;

enum class Sigma2Divisor { residual_df, observations };

// Whether alpha is held at the original-sample value inside a resampled
// or perturbed refit, or recomputed from the modified data.
enum class AlphaPolicy { fixed, recomputed };

AlphaPolicy alpha_policy_from_string(const std::string& name);
std::string to_string(AlphaPolicy policy);

struct PenaltyConfig {
    double k = 0.0;
    double h = 1.0;
    // Optional (k1, k2) pair with k = k2 / k1.
    std::optional<std::pair<double, double>> k_pair;
};

// Enforces k >= 0, h in {0, 1}, and |k - k2/k1| < 1e-12 when a pair is set.
void validate(const PenaltyConfig& config);

struct FitResult {
    Vector beta;
    Vector residuals;
    double gof = 0.0;
    double sigma2_hat = 0.0;
    Vector se;
    PenaltyConfig config;

    double residual_sum() const {
        double s = 0.0;
        for (double e : residuals) s += e;
        return s;
    }
};

struct AugmentedModel {
    Matrix X_A;
    Vector y_A;
};

// Cross-products and the eigendecomposition of X^T X, computed once and
// reused across penalty grids.
struct DesignMoments {
    std::size_t n = 0;
    std::size_t p = 0;
    Matrix XtX;
    Vector Xty;
    double yty = 0.0;
    double ybar = 0.0;
    EigenDecomposition eig;
};

DesignMoments design_moments(const Dataset& data);

// Refined solve of (X^T X + k I) x = rhs through the cached
// eigendecomposition; one residual-correction pass recovers the digits
// the spectral inverse loses on badly conditioned cross-products.
Vector shift_solve(const DesignMoments& m, const Vector& rhs, double k);

// Coefficients at one grid point through the cached eigendecomposition:
// beta = Gamma diag(1/(lambda_i + k)) Gamma^T (X^T y + k h alpha).
Vector beta_at(const DesignMoments& m, const AlphaVector& alpha, double k,
               double h);

// Residual sum of squares from the cached moments:
// e^T e = y^T y - 2 b^T X^T y + b^T X^T X b.
double rss_at(const DesignMoments& m, const Vector& beta);

// Goodness-of-fit 1 - e^T e / y^T y evaluated from cached moments.
double gof_at(const DesignMoments& m, const Vector& beta);

AlphaVector compute_alpha(const Dataset& data);

// Single-parameter alternative target d (d^T X^T X d)^{-1} d^T X^T X beta
// with d the all-ones vector; every entry equal.
AlphaVector alpha_alpr(const Dataset& data, const Vector& beta_ols);

// OLS coefficients for an arbitrary design (used by the augmented model
// and the resampling modules).
Vector ols_beta(const Matrix& X, const Vector& y);

// OLS residual variance plug-in e^T e / (n - p), or / n when the
// observations divisor is selected.
double sigma2_hat(const Dataset& data,
                  Sigma2Divisor divisor = Sigma2Divisor::residual_df);

// Solves (X^T X + k I) beta = X^T y + k h alpha. k = 0 is OLS, h = 0 is
// ridge. Standard errors use the OLS sigma^2 plug-in.
FitResult fit_penalized(const Dataset& data, const AlphaVector& alpha,
                        const PenaltyConfig& config,
                        Sigma2Divisor divisor = Sigma2Divisor::residual_df);

// Two-parameter weighting with k = k2 / k1, k1 > 0.
FitResult fit_penalized_two_k(const Dataset& data, const AlphaVector& alpha,
                              double k1, double k2, double h,
                              Sigma2Divisor divisor = Sigma2Divisor::residual_df);

// sigma^2 Z(k) X^T X Z(k) with Z(k) = (X^T X + k I)^{-1}; independent of h.
Matrix variance_covariance(const Dataset& data, double k, double sigma2);

// 1 - e^T e / y^T y, cross-checked against the moment form
// [b^T (X^T X + 2kI) b - 2 k h b^T alpha] / y^T y within 1e-9.
double gof(const Dataset& data, const FitResult& fit, const AlphaVector& alpha);

// Stacked design [X or transform(X); sqrt(k) I] with response
// [y; sqrt(k) h alpha]; OLS on it reproduces fit_penalized.
AugmentedModel augment(const Dataset& data, const AlphaVector& alpha,
                       const PenaltyConfig& config,
                       std::optional<TransformMode> transform = std::nullopt);

} // namespace penreg
