// Exception hierarchy shared across the library. Each class maps to one
// CLI exit code so failures stay machine-distinguishable end to end.
#pragma once

#include <stdexcept>
#include <string>

namespace penreg {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// File I/O and dataset shape problems: missing file, malformed CSV,
// absent column label, n <= p, constant regressor at load time.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Precondition violations on operation arguments: k < 0, h outside {0,1},
// degenerate transform input, malformed grid specs.
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Numerical failures: non-symmetric eigen input, non-convergence,
// non-positive-definite solve, singular resample cap exceeded.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

} // namespace penreg
