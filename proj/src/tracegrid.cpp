#include "penreg/tracegrid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

#include "penreg/diagnostics.hpp"
#include "penreg/errors.hpp"
#include "penreg/estimation.hpp"

namespace penreg {

namespace {

double parse_field(const std::string& text, const char* what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgument(std::string("grid spec: bad ") + what + " '" +
                              text + "'");
    }
    if (used != text.size())
        throw InvalidArgument(std::string("grid spec: bad ") + what + " '" +
                              text + "'");
    return value;
}

std::string describe_grid(const Vector& grid) {
    char buffer[96];
    if (grid.size() == 1) {
        std::snprintf(buffer, sizeof(buffer), "%g:%g:1", grid[0], grid[0]);
        return buffer;
    }
    const double step = grid[1] - grid[0];
    for (std::size_t j = 2; j < grid.size(); ++j) {
        const double gap = grid[j] - grid[j - 1];
        if (std::abs(gap - step) > 1e-9 * std::max(1.0, std::abs(step))) {
            std::snprintf(buffer, sizeof(buffer), "custom(%zu points)",
                          grid.size());
            return buffer;
        }
    }
    std::snprintf(buffer, sizeof(buffer), "%g:%g:%g", grid.front(),
                  grid.back(), step);
    return buffer;
}

void put_value(std::ostream& out, double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    out << buffer;
}

} // namespace

Vector parse_grid(const std::string& spec) {
    const std::size_t first = spec.find(':');
    const std::size_t second =
        first == std::string::npos ? std::string::npos
                                   : spec.find(':', first + 1);
    if (second == std::string::npos ||
        spec.find(':', second + 1) != std::string::npos)
        throw InvalidArgument("grid spec must be start:stop:step, got '" +
                              spec + "'");
    const double start = parse_field(spec.substr(0, first), "start");
    const double stop =
        parse_field(spec.substr(first + 1, second - first - 1), "stop");
    const double step = parse_field(spec.substr(second + 1), "step");
    if (!(start >= 0.0))
        throw InvalidArgument("grid spec: start must be >= 0");
    if (!(step > 0.0)) throw InvalidArgument("grid spec: step must be > 0");
    if (!(stop > start))
        throw InvalidArgument("grid spec: stop must exceed start");
    return uniform_grid(start, stop, step);
}

TraceGrid compute_trace(const Dataset& data, const AlphaVector& alpha,
                        double h, const Vector& grid, std::size_t threads) {
    if (h != 0.0 && h != 1.0)
        throw InvalidArgument("trace: h must be 0 or 1");
    if (grid.empty() || grid.front() != 0.0)
        throw InvalidArgument("trace: grid must start at k = 0");
    for (std::size_t j = 1; j < grid.size(); ++j)
        if (!(grid[j] > grid[j - 1]))
            throw InvalidArgument("trace: grid must be strictly increasing");
    if (alpha.size() != data.p())
        throw InvalidArgument("trace: alpha length does not match p");
    const double alpha_norm = norm2(alpha);
    if (alpha_norm <= 0.0)
        throw InvalidArgument("trace: alpha has zero norm");

    const DesignMoments m = design_moments(data);
    const Vector beta_ols = shift_solve(m, m.Xty, 0.0);
    const double dof = static_cast<double>(m.n) - static_cast<double>(m.p);
    if (dof <= 0.0)
        throw DataError("trace: no residual degrees of freedom");
    const double sigma2 = rss_at(m, beta_ols) / dof;
    const Vector xtx_beta = matvec(m.XtX, beta_ols);
    const Vector xi = unit_length_spectrum(data);

    TraceGrid trace;
    trace.h = h;
    trace.grid = grid;
    trace.rows.resize(grid.size());
    trace.dataset_id = data.dependent;
    trace.grid_spec = describe_grid(grid);

    const std::size_t workers =
        std::max<std::size_t>(1, std::min(threads, grid.size()));
    std::vector<std::exception_ptr> failures(workers);

    auto run_range = [&](std::size_t worker, std::size_t lo, std::size_t hi) {
        try {
            for (std::size_t j = lo; j < hi; ++j) {
                const double k = grid[j];
                TraceRow& row = trace.rows[j];
                row.k = k;
                row.beta = beta_at(m, alpha, k, h);
                row.norm2 = dot(row.beta, row.beta);
                row.gof = gof_at(m, row.beta);

                double variance = 0.0;
                for (std::size_t i = 0; i < m.p; ++i) {
                    const double d = m.eig.values[i] + k;
                    variance += sigma2 * m.eig.values[i] / (d * d);
                }
                Vector rhs = xtx_beta;
                for (std::size_t i = 0; i < m.p; ++i)
                    rhs[i] += k * h * alpha[i];
                Vector bias = shift_solve(m, rhs, k);
                for (std::size_t i = 0; i < m.p; ++i) bias[i] -= beta_ols[i];
                row.mse = variance + dot(bias, bias);

                const Vector vif = vif_extended(data, k);
                row.max_vif = *std::max_element(vif.begin(), vif.end());
                row.cn = condition_number_from_spectrum(xi, k);
                row.alpha_dist = norm2(vec_sub(alpha, row.beta)) / alpha_norm;
            }
        } catch (...) {
            failures[worker] = std::current_exception();
        }
    };

    if (workers == 1) {
        run_range(0, 0, grid.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (grid.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(grid.size(), lo + chunk);
            pool.emplace_back(run_range, w, lo, hi);
        }
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& e : failures) {
        if (e) std::rethrow_exception(e);
    }
    return trace;
}

void write_trace_csv(const TraceGrid& trace, std::ostream& out) {
    const std::size_t p = trace.rows.empty() ? 0 : trace.rows[0].beta.size();
    out << "k";
    for (std::size_t i = 1; i <= p; ++i) out << ",beta_" << i;
    out << ",norm2,gof,mse,max_vif,cn,alpha_dist\n";
    for (const TraceRow& row : trace.rows) {
        put_value(out, row.k);
        for (double b : row.beta) {
            out << ',';
            put_value(out, b);
        }
        out << ',';
        put_value(out, row.norm2);
        out << ',';
        put_value(out, row.gof);
        out << ',';
        put_value(out, row.mse);
        out << ',';
        put_value(out, row.max_vif);
        out << ',';
        put_value(out, row.cn);
        out << ',';
        put_value(out, row.alpha_dist);
        out << '\n';
    }
}

void write_trace_csv(const TraceGrid& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open trace output: " + path);
    write_trace_csv(trace, out);
    if (!out) throw DataError("failed writing trace output: " + path);
}

} // namespace penreg
