// Dense symmetric linear algebra: Jacobi eigendecomposition, Cholesky
// SPD solves, and the correlation matrix with its determinant.
#pragma once

#include "penreg/matrix.hpp"

namespace penreg {

// Eigenvalues sorted descending; eigenvectors stored as columns of an
// orthogonal matrix, column i paired with values[i].
struct EigenDecomposition {
    Vector values;
    Matrix vectors;
};

// Cyclic Jacobi on a symmetric matrix. Off-diagonal tolerance 1e-12
// (relative to the Frobenius norm), at most 100 sweeps.
EigenDecomposition eig_sym(const Matrix& A);

// Lower-triangular Cholesky factor of an SPD matrix.
Matrix cholesky(const Matrix& A);

// Solve A x = b for SPD A via Cholesky.
Vector solve_spd(const Matrix& A, const Vector& b);

// Column-by-column solve for a matrix right-hand side.
Matrix solve_spd(const Matrix& A, const Matrix& B);

struct CorrelationResult {
    Matrix R;
    double det;
};

// Pearson correlation matrix of the columns of X (no intercept column)
// and its determinant, computed from the Cholesky factor of R.
CorrelationResult correlation_det(const Matrix& X);

// Type-7 sample quantile: linear interpolation between order statistics
// at position (len - 1) * q. Copies and sorts its input.
double quantile_type7(Vector values, double q);

} // namespace penreg
