#include "penreg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace penreg {

namespace {

double off_diagonal_norm(const Matrix& A) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (i != j) s += A(i, j) * A(i, j);
    return std::sqrt(s);
}

double frobenius_norm(const Matrix& A) {
    double s = 0.0;
    for (double v : A.data()) s += v * v;
    return std::sqrt(s);
}

void check_symmetric(const Matrix& A) {
    if (A.rows() != A.cols())
        throw InvalidArgument("eig_sym: matrix not square");
    const double scale = std::max(frobenius_norm(A), 1.0);
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = i + 1; j < A.cols(); ++j)
            if (std::fabs(A(i, j) - A(j, i)) > 1e-10 * scale)
                throw NumericError("eig_sym: matrix not symmetric");
}

} // namespace

EigenDecomposition eig_sym(const Matrix& A) {
    check_symmetric(A);
    const std::size_t p = A.rows();

    Matrix D = A;
    Matrix V = Matrix::identity(p);

    const double tol = 1e-12 * std::max(frobenius_norm(A), 1.0);
    const int max_sweeps = 100;

    int sweep = 0;
    while (off_diagonal_norm(D) > tol) {
        if (++sweep > max_sweeps)
            throw NumericError("eig_sym: Jacobi iteration failed to converge");
        for (std::size_t q = 1; q < p; ++q) {
            for (std::size_t r = 0; r < q; ++r) {
                const double apq = D(r, q);
                if (std::fabs(apq) <= tol / static_cast<double>(p * p)) continue;
                const double app = D(r, r);
                const double aqq = D(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::fabs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) /
                        (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t i = 0; i < p; ++i) {
                    const double dir = D(i, r);
                    const double diq = D(i, q);
                    D(i, r) = c * dir - s * diq;
                    D(i, q) = s * dir + c * diq;
                }
                for (std::size_t j = 0; j < p; ++j) {
                    const double drj = D(r, j);
                    const double dqj = D(q, j);
                    D(r, j) = c * drj - s * dqj;
                    D(q, j) = s * drj + c * dqj;
                }
                for (std::size_t i = 0; i < p; ++i) {
                    const double vir = V(i, r);
                    const double viq = V(i, q);
                    V(i, r) = c * vir - s * viq;
                    V(i, q) = s * vir + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return D(a, a) > D(b, b); });

    EigenDecomposition out;
    out.values.resize(p);
    out.vectors = Matrix(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        out.values[j] = D(order[j], order[j]);
        for (std::size_t i = 0; i < p; ++i)
            out.vectors(i, j) = V(i, order[j]);
    }
    return out;
}

Matrix cholesky(const Matrix& A) {
    if (A.rows() != A.cols())
        throw InvalidArgument("cholesky: matrix not square");
    const std::size_t p = A.rows();
    Matrix L(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        double d = A(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (d <= 0.0)
            throw NumericError("cholesky: matrix not positive definite");
        L(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < p; ++i) {
            double s = A(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / L(j, j);
        }
    }
    return L;
}

Vector solve_spd(const Matrix& A, const Vector& b) {
    if (A.rows() != b.size())
        throw InvalidArgument("solve_spd: dimension mismatch");
    const Matrix L = cholesky(A);
    const std::size_t p = b.size();
    Vector z(p);
    for (std::size_t i = 0; i < p; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * z[k];
        z[i] = s / L(i, i);
    }
    Vector x(p);
    for (std::size_t ii = p; ii-- > 0;) {
        double s = z[ii];
        for (std::size_t k = ii + 1; k < p; ++k) s -= L(k, ii) * x[k];
        x[ii] = s / L(ii, ii);
    }
    return x;
}

Matrix solve_spd(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows())
        throw InvalidArgument("solve_spd: dimension mismatch");
    Matrix X(B.rows(), B.cols());
    for (std::size_t j = 0; j < B.cols(); ++j)
        X.set_column(j, solve_spd(A, B.column(j)));
    return X;
}

CorrelationResult correlation_det(const Matrix& X) {
    const std::size_t n = X.rows();
    const std::size_t q = X.cols();
    if (q < 2)
        throw InvalidArgument("correlation_det: need at least two columns");

    Matrix C(n, q);
    for (std::size_t j = 0; j < q; ++j) {
        Vector col = X.column(j);
        const double mu = vec_mean(col);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            col[i] -= mu;
            ss += col[i] * col[i];
        }
        if (ss <= 0.0)
            throw InvalidArgument("correlation_det: constant column");
        const double inv = 1.0 / std::sqrt(ss);
        for (std::size_t i = 0; i < n; ++i) col[i] *= inv;
        C.set_column(j, col);
    }

    CorrelationResult out;
    out.R = crossprod(C);
    for (std::size_t j = 0; j < q; ++j) out.R(j, j) = 1.0;

    // det(R) through det(L)^2; a singular R (duplicated column) yields 0
    // instead of a Cholesky failure.
    double det = 1.0;
    try {
        const Matrix L = cholesky(out.R);
        for (std::size_t j = 0; j < q; ++j) det *= L(j, j) * L(j, j);
    } catch (const NumericError&) {
        det = 0.0;
    }
    out.det = std::min(1.0, std::max(0.0, det));
    return out;
}

double quantile_type7(Vector values, double q) {
    if (values.empty()) {
        throw InvalidArgument("quantile_type7: empty sample");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw InvalidArgument("quantile_type7: q must lie in [0, 1]");
    }
    std::sort(values.begin(), values.end());
    const double pos = static_cast<double>(values.size() - 1) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

} // namespace penreg
