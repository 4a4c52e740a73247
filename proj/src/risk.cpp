#include "penreg/risk.hpp"

#include <cmath>

#include "penreg/errors.hpp"

namespace penreg {

namespace {

Matrix shifted(const Matrix& XtX, double k) {
    Matrix S = XtX;
    for (std::size_t i = 0; i < S.rows(); ++i) S(i, i) += k;
    return S;
}

} // namespace

MseBreakdown mse(const Dataset& data, const AlphaVector& alpha,
                 const PenaltyConfig& config, const Vector& beta_plug,
                 double sigma2) {
    validate(config);
    const std::size_t p = data.p();
    if (alpha.size() != p || beta_plug.size() != p)
        throw InvalidArgument("alpha/beta_plug length does not match p");

    const double k = config.k;
    const double h = config.h;
    const Matrix XtX = crossprod(data.X);
    const Matrix Z = solve_spd(shifted(XtX, k), Matrix::identity(p));
    const Matrix ZX = matmul(Z, XtX);

    MseBreakdown out;
    out.k = k;
    out.h = h;

    const Matrix ZXZ = matmul(ZX, Z);
    for (std::size_t i = 0; i < p; ++i) out.variance_term += sigma2 * ZXZ(i, i);

    const Vector Za = matvec(Z, alpha);
    Vector bias = matvec(ZX, beta_plug);
    for (std::size_t i = 0; i < p; ++i)
        bias[i] += -beta_plug[i] + k * h * Za[i];
    out.bias_term = dot(bias, bias);
    out.total = out.variance_term + out.bias_term;

    Vector ridge_bias = matvec(ZX, beta_plug);
    for (std::size_t i = 0; i < p; ++i) ridge_bias[i] -= beta_plug[i];
    out.ridge_mse = out.variance_term + dot(ridge_bias, ridge_bias);

    // (Z X^T X - I)^T Z alpha, then the closed form of the gap term.
    Vector ZXtZa = matvec_t(ZX, Za);
    for (std::size_t i = 0; i < p; ++i) ZXtZa[i] -= Za[i];
    out.s_term = 2.0 * k * h * dot(beta_plug, ZXtZa) +
                 k * k * h * h * dot(Za, Za);
    return out;
}

double mse_asymptote(const AlphaVector& alpha, const Vector& beta_plug,
                     double h) {
    return dot(beta_plug, beta_plug) - 2.0 * h * dot(beta_plug, alpha) +
           h * h * dot(alpha, alpha);
}

double SpectralMse::total(double k, double h) const {
    double variance = 0.0, bias = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        const double d = lambda[i] + k;
        variance += sigma2 * lambda[i] / (d * d);
        const double t = k * (h * b[i] - e[i]) / d;
        bias += t * t;
    }
    return variance + bias;
}

SpectralMse spectral_mse(const DesignMoments& m, const AlphaVector& alpha,
                         const Vector& beta_plug, double sigma2) {
    SpectralMse s;
    s.lambda = m.eig.values;
    s.e = matvec_t(m.eig.vectors, beta_plug);
    s.b = matvec_t(m.eig.vectors, alpha);
    s.sigma2 = sigma2;
    return s;
}

GridMinimum minimize_mse_grid(const Dataset& data, const AlphaVector& alpha,
                              double h, const Vector& grid,
                              const Vector& beta_plug, double sigma2) {
    if (grid.size() < 3)
        throw InvalidArgument("grid needs at least 3 points");
    if (grid.front() != 0.0)
        throw InvalidArgument("grid must start at 0");
    for (std::size_t j = 1; j < grid.size(); ++j)
        if (!(grid[j] > grid[j - 1]))
            throw InvalidArgument("grid must be strictly increasing");

    const DesignMoments m = design_moments(data);
    const SpectralMse s = spectral_mse(m, alpha, beta_plug, sigma2);

    std::vector<double> curve(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        curve[j] = s.total(grid[j], h);

    GridMinimum out;
    out.grid = grid;
    std::size_t count = 0;
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
        if (curve[j] < curve[j - 1] && curve[j] < curve[j + 1]) {
            if (count == 0) out.k_star = grid[j];
            ++count;
        }
    }
    out.uniqueness = count == 0   ? Uniqueness::none
                     : count == 1 ? Uniqueness::unique
                                  : Uniqueness::multiple;
    if (out.k_star) {
        // report the minimum through the direct breakdown, which stays
        // accurate where the spectral scan loses digits
        out.mse_star = mse(data, alpha, {*out.k_star, h, std::nullopt},
                           beta_plug, sigma2)
                           .total;
    } else {
        out.mse_star = std::nan("");
    }
    return out;
}

Vector uniform_grid(double start, double stop, double step) {
    if (!(step > 0.0)) throw InvalidArgument("grid step must be > 0");
    if (!(stop > start)) throw InvalidArgument("grid stop must exceed start");
    Vector g;
    const std::size_t count =
        static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
    g.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        double v = start + static_cast<double>(j) * step;
        if (v > stop) v = stop;
        g.push_back(v);
    }
    return g;
}

std::string to_string(Uniqueness u) {
    switch (u) {
        case Uniqueness::none: return "none";
        case Uniqueness::unique: return "unique";
        case Uniqueness::multiple: return "multiple";
    }
    return "unknown";
}

} // namespace penreg
