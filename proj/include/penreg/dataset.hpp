// Dataset representation, CSV ingestion, and the column transformations
// (center, standardize, unit-length) used by the diagnostics.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "penreg/matrix.hpp"

namespace penreg {

enum class TransformMode { center, standardize, unit_length };

// Regression data: y in natural units, X with a synthesized leading
// intercept column of ones. Immutable after construction.
struct Dataset {
    Vector y;
    Matrix X;
    std::vector<std::string> names;
    std::string dependent;

    std::size_t n() const { return X.rows(); }
    std::size_t p() const { return X.cols(); }
};

// Reads a header-row CSV, takes `dependent` as y, keeps the remaining
// columns in file order after the synthesized intercept. Rejects missing
// files, non-numeric cells, absent labels, n <= p, and constant
// regressor columns.
Dataset load_dataset(const std::string& path, const std::string& dependent);

// Builds a Dataset from in-memory columns (intercept synthesized).
// Applies the same shape and degeneracy checks as load_dataset.
Dataset make_dataset(const Vector& y, const Matrix& regressors,
                     const std::vector<std::string>& names,
                     const std::string& dependent);

// Applies one transform to every column (optionally passing the leading
// intercept column through unchanged):
//   center:      x - mean(x)
//   standardize: (x - mean(x)) / (sd(x) * sqrt(n)), population sd
//   unit-length: x / sqrt(sum x_i^2)
Matrix transform_columns(const Matrix& X, TransformMode mode,
                         bool skip_intercept);

TransformMode transform_mode_from_string(const std::string& name);
std::string to_string(TransformMode mode);

// FNV-1a 64-bit hash of a file's bytes; used to pin the bundled dataset.
std::uint64_t fnv1a64_file(const std::string& path);

} // namespace penreg
