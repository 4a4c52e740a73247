#include "penreg/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "penreg/errors.hpp"

namespace penreg {

Vector coefficient_of_variation(const Matrix& X) {
    const std::size_t n = X.rows();
    Vector cv;
    cv.reserve(X.cols() - 1);
    for (std::size_t j = 1; j < X.cols(); ++j) {
        const Vector col = X.column(j);
        const double mu = vec_mean(col);
        double ss = 0.0;
        for (double v : col) ss += (v - mu) * (v - mu);
        const double sd = std::sqrt(ss / static_cast<double>(n));
        cv.push_back(mu == 0.0 ? std::numeric_limits<double>::infinity()
                               : sd / std::fabs(mu));
    }
    return cv;
}

Vector vif_extended(const Dataset& data, double k) {
    if (!(k >= 0.0)) throw InvalidArgument("penalty k must be >= 0");
    const std::size_t q = data.p() - 1;

    // Standardizing annihilates the intercept, so the auxiliary
    // regressions run on the q remaining columns only.
    const Matrix S = transform_columns(data.X, TransformMode::standardize, true);
    Matrix W(data.n(), q);
    for (std::size_t j = 0; j < q; ++j)
        for (std::size_t i = 0; i < data.n(); ++i) W(i, j) = S(i, j + 1);

    // Cross-product of the sqrt(k)-augmented standardized design.
    Matrix G = crossprod(W);
    for (std::size_t i = 0; i < q; ++i) G(i, i) += k;

    Vector vif(q, 1.0);
    if (q == 1) return vif;

    const double total_ss = 1.0 + k;
    for (std::size_t i = 0; i < q; ++i) {
        Matrix Gm(q - 1, q - 1);
        Vector g(q - 1);
        std::size_t rr = 0;
        for (std::size_t r = 0; r < q; ++r) {
            if (r == i) continue;
            g[rr] = G(r, i);
            std::size_t cc = 0;
            for (std::size_t c = 0; c < q; ++c) {
                if (c == i) continue;
                Gm(rr, cc++) = G(r, c);
            }
            ++rr;
        }
        const Vector coef = solve_spd(Gm, g);
        const double ssr = total_ss - dot(coef, g);
        if (!(ssr > 0.0))
            throw NumericError("degenerate auxiliary regression in VIF");
        vif[i] = total_ss / ssr;
    }
    return vif;
}

Vector unit_length_spectrum(const Dataset& data) {
    const Matrix U = transform_columns(data.X, TransformMode::unit_length, false);
    return eig_sym(crossprod(U)).values;
}

double condition_number_from_spectrum(const Vector& xi, double k) {
    if (!(k >= 0.0)) throw InvalidArgument("penalty k must be >= 0");
    if (xi.empty()) throw InvalidArgument("empty spectrum");
    const double xi_max = xi.front();
    const double xi_min = std::max(xi.back(), 0.0);
    return std::sqrt((xi_max + k) / (xi_min + k));
}

double condition_number_extended(const Dataset& data, double k) {
    return condition_number_from_spectrum(unit_length_spectrum(data), k);
}

DiagnosticsReport full_report(const Dataset& data, double k) {
    DiagnosticsReport r;
    r.k = k;
    r.cv = coefficient_of_variation(data.X);
    r.vif = vif_extended(data, k);
    r.cn = condition_number_extended(data, k);

    Matrix regressors(data.n(), data.p() - 1);
    for (std::size_t j = 1; j < data.p(); ++j)
        for (std::size_t i = 0; i < data.n(); ++i)
            regressors(i, j - 1) = data.X(i, j);
    r.corr_det = data.p() - 1 >= 2 ? correlation_det(regressors).det : 1.0;

    for (double v : r.cv) {
        if (std::isinf(v))
            r.has_infinite_cv = true;
        else if (v < kCvThreshold)
            r.cv_trouble = true;
    }
    for (double v : r.vif)
        if (v > kVifThreshold) r.vif_trouble = true;
    r.cn_trouble_20 = r.cn > kCnThresholdLow;
    r.cn_trouble_30 = r.cn > kCnThresholdHigh;
    r.det_trouble = r.corr_det < kDetThreshold;
    return r;
}

} // namespace penreg
