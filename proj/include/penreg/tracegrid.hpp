// Estimates, norms, goodness of fit, MSE, and collinearity measures
// evaluated over a k grid; the long-form data behind trace plots.
#pragma once

#include <iosfwd>
#include <string>

#include "penreg/risk.hpp"

namespace penreg {

struct TraceRow {
    double k = 0.0;
    Vector beta;
    // Squared Euclidean norm of beta.
    double norm2 = 0.0;
    double gof = 0.0;
    double mse = 0.0;
    double max_vif = 0.0;
    double cn = 0.0;
    // ||alpha - beta|| / ||alpha||.
    double alpha_dist = 0.0;
};

struct TraceGrid {
    double h = 1.0;
    Vector grid;
    std::vector<TraceRow> rows;
    std::string dataset_id;
    std::string grid_spec;
};

// Parses "start:stop:step" with inclusive endpoints into a grid.
Vector parse_grid(const std::string& spec);

inline constexpr const char* kDiagnosticsGridSpec = "0:1:0.01";
inline constexpr const char* kTraceGridSpec = "0:100:0.01";

// Fills one row per grid point. The eigendecomposition and the
// unit-length spectrum are computed once; the MSE column uses the OLS
// beta and sigma^2 plug-ins. Rows are computed in parallel when threads
// exceeds one and are returned in grid order regardless.
TraceGrid compute_trace(const Dataset& data, const AlphaVector& alpha,
                        double h, const Vector& grid,
                        std::size_t threads = 1);

// CSV with the fixed column set
// k, beta_1..beta_p, norm2, gof, mse, max_vif, cn, alpha_dist.
void write_trace_csv(const TraceGrid& trace, std::ostream& out);
void write_trace_csv(const TraceGrid& trace, const std::string& path);

} // namespace penreg
