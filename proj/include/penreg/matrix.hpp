// Minimal dense row-major matrix and vector helpers used throughout the
// library. Sizes here are tiny (p <= ~10, n <= ~10^4), so clarity wins
// over blocking or vectorization tricks.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "penreg/errors.hpp"

namespace penreg {

using Vector = std::vector<double>;

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Vector column(std::size_t j) const {
        Vector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Vector row(std::size_t i) const {
        Vector r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void set_column(std::size_t j, const Vector& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

inline Matrix matmul(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows()) throw InvalidArgument("matmul: dimension mismatch");
    Matrix C(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const double a = A(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < B.cols(); ++j)
                C(i, j) += a * B(k, j);
        }
    return C;
}

inline Vector matvec(const Matrix& A, const Vector& x) {
    if (A.cols() != x.size()) throw InvalidArgument("matvec: dimension mismatch");
    Vector y(A.rows(), 0.0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// A^T x without forming the transpose.
inline Vector matvec_t(const Matrix& A, const Vector& x) {
    if (A.rows() != x.size()) throw InvalidArgument("matvec_t: dimension mismatch");
    Vector y(A.cols(), 0.0);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const double xi = x[i];
        for (std::size_t j = 0; j < A.cols(); ++j) y[j] += A(i, j) * xi;
    }
    return y;
}

// A^T A, exploiting symmetry of the result.
inline Matrix crossprod(const Matrix& A) {
    Matrix C(A.cols(), A.cols());
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t k = j; k < A.cols(); ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < A.rows(); ++i) s += A(i, j) * A(i, k);
            C(j, k) = s;
            C(k, j) = s;
        }
    return C;
}

inline double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline Vector vec_sub(const Vector& a, const Vector& b) {
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

inline Vector vec_add(const Vector& a, const Vector& b) {
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

inline Vector vec_scale(const Vector& a, double s) {
    Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s;
    return c;
}

inline double vec_mean(const Vector& a) {
    double s = 0.0;
    for (double v : a) s += v;
    return s / static_cast<double>(a.size());
}

} // namespace penreg
