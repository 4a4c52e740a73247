#include "penreg/estimation.hpp"

#include <cmath>
#include <limits>

#include "penreg/errors.hpp"

namespace penreg {

namespace {

Matrix shifted(const Matrix& XtX, double k) {
    Matrix S = XtX;
    for (std::size_t i = 0; i < S.rows(); ++i) S(i, i) += k;
    return S;
}

// Cholesky solve with one step of iterative refinement; the credit
// cross-product is ill-conditioned enough at k = 0 for refinement to pay.
Vector refined_solve(const Matrix& A, const Vector& b) {
    Vector x = solve_spd(A, b);
    const Vector r = vec_sub(b, matvec(A, x));
    const Vector d = solve_spd(A, r);
    return vec_add(x, d);
}

Vector penalized_rhs(const DesignMoments& m, const AlphaVector& alpha,
                     double k, double h) {
    Vector rhs = m.Xty;
    if (k > 0.0 && h != 0.0)
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] += k * h * alpha[i];
    return rhs;
}

} // namespace

void validate(const PenaltyConfig& config) {
    if (!(config.k >= 0.0) || !std::isfinite(config.k))
        throw InvalidArgument("penalty k must be finite and >= 0");
    if (config.h != 0.0 && config.h != 1.0)
        throw InvalidArgument("h must be 0 or 1");
    if (config.k_pair) {
        const auto [k1, k2] = *config.k_pair;
        if (!(k1 > 0.0)) throw InvalidArgument("k1 must be > 0");
        if (!(k2 >= 0.0)) throw InvalidArgument("k2 must be >= 0");
        if (std::fabs(config.k - k2 / k1) >= 1e-12)
            throw InvalidArgument("k pair inconsistent with k = k2/k1");
    }
}

DesignMoments design_moments(const Dataset& data) {
    DesignMoments m;
    m.n = data.n();
    m.p = data.p();
    m.XtX = crossprod(data.X);
    m.Xty = matvec_t(data.X, data.y);
    m.yty = dot(data.y, data.y);
    m.ybar = vec_mean(data.y);
    m.eig = eig_sym(m.XtX);
    return m;
}

namespace {

Vector eig_shift_solve(const DesignMoments& m, const Vector& rhs, double k) {
    const Vector g = matvec_t(m.eig.vectors, rhs);
    Vector scaled(m.p);
    for (std::size_t i = 0; i < m.p; ++i) {
        const double d = m.eig.values[i] + k;
        if (d <= 0.0)
            throw NumericError("shifted cross-product not positive definite");
        scaled[i] = g[i] / d;
    }
    return matvec(m.eig.vectors, scaled);
}

} // namespace

Vector shift_solve(const DesignMoments& m, const Vector& rhs, double k) {
    Vector x = eig_shift_solve(m, rhs, k);
    // One refinement step recovers the digits the spectral solve loses on
    // badly conditioned cross-products near k = 0.
    Vector r = matvec(m.XtX, x);
    for (std::size_t i = 0; i < m.p; ++i) r[i] = rhs[i] - (r[i] + k * x[i]);
    const Vector d = eig_shift_solve(m, r, k);
    return vec_add(x, d);
}

Vector beta_at(const DesignMoments& m, const AlphaVector& alpha, double k,
               double h) {
    return shift_solve(m, penalized_rhs(m, alpha, k, h), k);
}

double rss_at(const DesignMoments& m, const Vector& beta) {
    return m.yty - 2.0 * dot(beta, m.Xty) + dot(beta, matvec(m.XtX, beta));
}

double gof_at(const DesignMoments& m, const Vector& beta) {
    return 1.0 - rss_at(m, beta) / m.yty;
}

AlphaVector compute_alpha(const Dataset& data) {
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    const double ybar = vec_mean(data.y);

    AlphaVector alpha(p);
    alpha[0] = ybar;
    for (std::size_t j = 1; j < p; ++j) {
        const Vector xj = data.X.column(j);
        const double xbar = vec_mean(xj);
        double cov = 0.0, var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cov += (xj[i] - xbar) * (data.y[i] - ybar);
            var += (xj[i] - xbar) * (xj[i] - xbar);
        }
        if (var <= 0.0)
            throw InvalidArgument("constant regressor '" + data.names[j] + "'");
        alpha[j] = cov / var;
    }
    return alpha;
}

AlphaVector alpha_alpr(const Dataset& data, const Vector& beta_ols) {
    const Matrix XtX = crossprod(data.X);
    const Vector d(data.p(), 1.0);
    const Vector XtXd = matvec(XtX, d);
    const double denom = dot(d, XtXd);
    if (denom <= 0.0)
        throw NumericError("degenerate design: d^T X^T X d = 0");
    const double scale = dot(XtXd, beta_ols) / denom;
    return AlphaVector(data.p(), scale);
}

Vector ols_beta(const Matrix& X, const Vector& y) {
    return refined_solve(crossprod(X), matvec_t(X, y));
}

double sigma2_hat(const Dataset& data, Sigma2Divisor divisor) {
    const Vector beta = ols_beta(data.X, data.y);
    const Vector e = vec_sub(data.y, matvec(data.X, beta));
    const double rss = dot(e, e);
    const double div = divisor == Sigma2Divisor::residual_df
                           ? static_cast<double>(data.n() - data.p())
                           : static_cast<double>(data.n());
    return rss / div;
}

FitResult fit_penalized(const Dataset& data, const AlphaVector& alpha,
                        const PenaltyConfig& config, Sigma2Divisor divisor) {
    validate(config);
    if (alpha.size() != data.p())
        throw InvalidArgument("alpha length does not match p");

    const Matrix XtX = crossprod(data.X);
    const Vector Xty = matvec_t(data.X, data.y);

    Vector rhs = Xty;
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] += config.k * config.h * alpha[i];

    FitResult fit;
    fit.config = config;
    fit.beta = refined_solve(shifted(XtX, config.k), rhs);
    fit.residuals = vec_sub(data.y, matvec(data.X, fit.beta));
    fit.gof = 1.0 - dot(fit.residuals, fit.residuals) / dot(data.y, data.y);

    // The sigma^2 plug-in needs the unpenalized fit; on a rank-deficient
    // design at k > 0 the coefficients are still defined, so the standard
    // errors degrade to NaN instead of failing the whole fit.
    try {
        fit.sigma2_hat = sigma2_hat(data, divisor);
        const Matrix V = variance_covariance(data, config.k, fit.sigma2_hat);
        fit.se.resize(data.p());
        for (std::size_t i = 0; i < data.p(); ++i)
            fit.se[i] = std::sqrt(std::max(0.0, V(i, i)));
    } catch (const NumericError&) {
        if (config.k == 0.0) throw;
        fit.sigma2_hat = std::numeric_limits<double>::quiet_NaN();
        fit.se.assign(data.p(), std::numeric_limits<double>::quiet_NaN());
    }
    return fit;
}

FitResult fit_penalized_two_k(const Dataset& data, const AlphaVector& alpha,
                              double k1, double k2, double h,
                              Sigma2Divisor divisor) {
    if (!(k1 > 0.0)) throw InvalidArgument("k1 must be > 0");
    if (!(k2 >= 0.0)) throw InvalidArgument("k2 must be >= 0");
    PenaltyConfig config;
    config.k = k2 / k1;
    config.h = h;
    config.k_pair = std::make_pair(k1, k2);
    return fit_penalized(data, alpha, config, divisor);
}

Matrix variance_covariance(const Dataset& data, double k, double sigma2) {
    if (!(k >= 0.0)) throw InvalidArgument("penalty k must be >= 0");
    if (!(sigma2 > 0.0)) throw InvalidArgument("sigma2 must be > 0");

    const Matrix XtX = crossprod(data.X);
    const Matrix Z = solve_spd(shifted(XtX, k), Matrix::identity(data.p()));
    Matrix V = matmul(Z, matmul(XtX, Z));
    for (auto& v : V.data()) v *= sigma2;
    for (std::size_t i = 0; i < V.rows(); ++i)
        for (std::size_t j = i + 1; j < V.cols(); ++j) {
            const double s = 0.5 * (V(i, j) + V(j, i));
            V(i, j) = s;
            V(j, i) = s;
        }
    return V;
}

double gof(const Dataset& data, const FitResult& fit, const AlphaVector& alpha) {
    const double yty = dot(data.y, data.y);
    if (!(yty > 0.0)) throw InvalidArgument("y^T y must be > 0");

    const double direct = 1.0 - dot(fit.residuals, fit.residuals) / yty;

    const Matrix XtX = crossprod(data.X);
    const double k = fit.config.k;
    const double h = fit.config.h;
    Vector Sb = matvec(XtX, fit.beta);
    for (std::size_t i = 0; i < Sb.size(); ++i)
        Sb[i] += 2.0 * k * fit.beta[i];
    const double moment =
        (dot(fit.beta, Sb) - 2.0 * k * h * dot(fit.beta, alpha)) / yty;

    if (std::fabs(direct - moment) > 1e-9)
        throw NumericError("goodness-of-fit forms disagree beyond 1e-9");
    return direct;
}

AugmentedModel augment(const Dataset& data, const AlphaVector& alpha,
                       const PenaltyConfig& config,
                       std::optional<TransformMode> transform) {
    validate(config);
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    const double root_k = std::sqrt(config.k);

    const Matrix top = transform
                           ? transform_columns(data.X, *transform, true)
                           : data.X;

    AugmentedModel am;
    am.X_A = Matrix(n + p, p);
    am.y_A.assign(n + p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) am.X_A(i, j) = top(i, j);
        am.y_A[i] = data.y[i];
    }
    for (std::size_t j = 0; j < p; ++j) {
        am.X_A(n + j, j) = root_k;
        am.y_A[n + j] = root_k * config.h * alpha[j];
    }
    return am;
}

AlphaPolicy alpha_policy_from_string(const std::string& name) {
    if (name == "fixed") return AlphaPolicy::fixed;
    if (name == "recomputed" || name == "recompute") {
        return AlphaPolicy::recomputed;
    }
    throw InvalidArgument("unknown alpha policy: " + name);
}

std::string to_string(AlphaPolicy policy) {
    switch (policy) {
    case AlphaPolicy::fixed: return "fixed";
    case AlphaPolicy::recomputed: return "recomputed";
    }
    return "unknown";
}

} // namespace penreg
