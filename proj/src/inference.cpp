#include "penreg/inference.hpp"

#include <cmath>
#include <exception>
#include <thread>

#include "penreg/numerics.hpp"
#include "penreg/rng.hpp"

namespace penreg {

namespace {

Dataset resample_rows(const Dataset& data, Rng& rng) {
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    Dataset out;
    out.names = data.names;
    out.dependent = data.dependent;
    out.y.resize(n);
    out.X = Matrix(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = rng.uniform_int(n);
        out.y[i] = data.y[r];
        for (std::size_t j = 0; j < p; ++j) {
            out.X(i, j) = data.X(r, j);
        }
    }
    return out;
}

BootstrapSummary summarize(std::string statistic, double theta_hat,
                           Vector draws, std::uint64_t seed) {
    BootstrapSummary s;
    s.statistic = std::move(statistic);
    s.m = draws.size();
    s.theta_hat = theta_hat;
    s.seed = seed;

    double sum = 0.0;
    for (double d : draws) sum += d;
    s.theta_bar = sum / static_cast<double>(s.m);

    double ss = 0.0;
    for (double d : draws) ss += (d - s.theta_bar) * (d - s.theta_bar);
    s.sigma_theta = std::sqrt(ss / static_cast<double>(s.m - 1));

    s.interval_normal = {s.theta_bar - 1.96 * s.sigma_theta,
                         s.theta_bar + 1.96 * s.sigma_theta};
    s.interval_percentile = {quantile_type7(draws, 0.025),
                             quantile_type7(draws, 0.975)};
    s.draws = std::move(draws);
    return s;
}

} // namespace

BootstrapResult bootstrap(const Dataset& data, const AlphaVector& alpha,
                          AlphaPolicy alpha_policy, const PenaltyConfig& config,
                          std::size_t m, std::uint64_t seed,
                          std::size_t threads) {
    if (m < 2) {
        throw InvalidArgument("bootstrap: m must be at least 2");
    }
    const FitResult full = fit_penalized(data, alpha, config);
    const std::size_t p = data.p();
    const std::size_t redraw_cap = 10 * m;

    std::vector<Vector> coeff_draws(p, Vector(m, 0.0));
    Vector gof_draws(m, 0.0);
    std::vector<std::size_t> redraw_counts(m, 0);

    const std::size_t workers =
        std::max<std::size_t>(1, std::min(threads, m));
    std::vector<std::exception_ptr> failures(workers);

    auto run_range = [&](std::size_t worker, std::size_t lo, std::size_t hi) {
        try {
            for (std::size_t r = lo; r < hi; ++r) {
                Rng rng(seed, r);
                for (;;) {
                    const Dataset ds = resample_rows(data, rng);
                    try {
                        const AlphaVector& a =
                            alpha_policy == AlphaPolicy::fixed ? alpha
                                                               : compute_alpha(ds);
                        const FitResult fit = fit_penalized(ds, a, config);
                        for (std::size_t j = 0; j < p; ++j) {
                            coeff_draws[j][r] = fit.beta[j];
                        }
                        gof_draws[r] = fit.gof;
                        break;
                    } catch (const NumericError&) {
                    } catch (const InvalidArgument&) {
                    }
                    if (++redraw_counts[r] > redraw_cap) {
                        throw NumericError(
                            "bootstrap: redraw budget exhausted on a resample "
                            "with singular cross-product");
                    }
                }
            }
        } catch (...) {
            failures[worker] = std::current_exception();
        }
    };

    if (workers == 1) {
        run_range(0, 0, m);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (m + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(m, lo + chunk);
            pool.emplace_back(run_range, w, lo, hi);
        }
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& e : failures) {
        if (e) std::rethrow_exception(e);
    }

    std::size_t total_redraws = 0;
    for (std::size_t c : redraw_counts) total_redraws += c;
    if (total_redraws > redraw_cap) {
        throw NumericError("bootstrap: redraw budget exhausted across resamples");
    }

    BootstrapResult result;
    result.alpha_policy = alpha_policy;
    result.config = full.config;
    result.m = m;
    result.seed = seed;
    result.redraws = total_redraws;
    result.coefficients.reserve(p);
    for (std::size_t j = 0; j < p; ++j) {
        result.coefficients.push_back(summarize("beta_" + std::to_string(j + 1),
                                                full.beta[j],
                                                std::move(coeff_draws[j]), seed));
    }
    result.gof = summarize("gof", full.gof, std::move(gof_draws), seed);
    return result;
}

} // namespace penreg
