// Multicollinearity diagnostics: coefficients of variation, the
// penalty-extended variance inflation factors and condition number, and
// threshold verdicts.
#pragma once

#include "penreg/dataset.hpp"
#include "penreg/numerics.hpp"

namespace penreg {

// Published thresholds the verdicts are judged against.
inline constexpr double kCvThreshold = 0.1002506;
inline constexpr double kVifThreshold = 10.0;
inline constexpr double kCnThresholdLow = 20.0;
inline constexpr double kCnThresholdHigh = 30.0;
inline constexpr double kDetThreshold = 0.1013;

struct DiagnosticsReport {
    double k = 0.0;
    Vector cv;
    Vector vif;
    double cn = 0.0;
    double corr_det = 0.0;
    bool cv_trouble = false;
    bool vif_trouble = false;
    bool cn_trouble_20 = false;
    bool cn_trouble_30 = false;
    bool det_trouble = false;
    bool has_infinite_cv = false;
};

// Population sd / |mean| per non-intercept column; a zero-mean column
// yields an infinite sentinel rather than an error.
Vector coefficient_of_variation(const Matrix& X);

// VIF(i,k): standardize the non-intercept columns, append a sqrt(k)
// identity block, and run each auxiliary regression through the SPD
// solver on the augmented cross-product. k = 0 is the classical VIF.
Vector vif_extended(const Dataset& data, double k);

// Eigenvalues (descending) of the unit-length-transformed cross-product,
// intercept included; independent of k, so grid sweeps compute it once.
Vector unit_length_spectrum(const Dataset& data);

// CN(k) = sqrt((xi_max + k) / (xi_min + k)) against a precomputed
// spectrum, with the smallest eigenvalue clamped at zero.
double condition_number_from_spectrum(const Vector& xi, double k);

// CN(k) from the dataset directly.
double condition_number_extended(const Dataset& data, double k);

// Bundles the measures above plus the correlation determinant with
// threshold verdicts.
DiagnosticsReport full_report(const Dataset& data, double k);

} // namespace penreg
