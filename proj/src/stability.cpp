#include "penreg/stability.hpp"

#include <cmath>
#include <exception>
#include <thread>

#include "penreg/numerics.hpp"
#include "penreg/rng.hpp"

namespace penreg {

Vector perturb_vector(const Vector& x, const Vector& p) {
    if (x.size() != p.size()) {
        throw InvalidArgument("perturb_vector: size mismatch");
    }
    const double pnorm = norm2(p);
    if (pnorm <= 0.0) {
        throw InvalidArgument("perturb_vector: zero perturbation direction");
    }
    const double scale = 0.01 * norm2(x) / pnorm;
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] + scale * p[i];
    }
    return out;
}

namespace {

Dataset perturb_regressors(const Dataset& data, Rng& rng) {
    const std::size_t n = data.n();
    Dataset out = data;
    Vector direction(n);
    for (std::size_t j = 1; j < data.p(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            direction[i] = rng.normal();
        }
        out.X.set_column(j, perturb_vector(data.X.column(j), direction));
    }
    return out;
}

} // namespace

PerturbationReport stability_analysis(const Dataset& data,
                                      const AlphaVector& alpha,
                                      AlphaPolicy alpha_policy,
                                      const PenaltyConfig& config,
                                      std::size_t iterations,
                                      std::uint64_t seed,
                                      std::size_t threads) {
    if (iterations < 1) {
        throw InvalidArgument("stability_analysis: iterations must be >= 1");
    }
    const FitResult base = fit_penalized(data, alpha, config);
    const double base_norm = norm2(base.beta);
    if (base_norm <= 0.0) {
        throw InvalidArgument("stability_analysis: zero coefficient vector");
    }
    const std::size_t redraw_cap = 10 * iterations;

    Vector changes(iterations, 0.0);
    std::vector<std::size_t> redraw_counts(iterations, 0);
    const std::size_t workers =
        std::max<std::size_t>(1, std::min(threads, iterations));
    std::vector<std::exception_ptr> failures(workers);

    auto run_range = [&](std::size_t worker, std::size_t lo, std::size_t hi) {
        try {
            for (std::size_t i = lo; i < hi; ++i) {
                Rng rng(seed, i);
                for (;;) {
                    const Dataset perturbed = perturb_regressors(data, rng);
                    try {
                        const AlphaVector& a =
                            alpha_policy == AlphaPolicy::fixed
                                ? alpha
                                : compute_alpha(perturbed);
                        const FitResult fit = fit_penalized(perturbed, a, config);
                        changes[i] =
                            100.0 * norm2(vec_sub(base.beta, fit.beta)) /
                            base_norm;
                        break;
                    } catch (const NumericError&) {
                    } catch (const InvalidArgument&) {
                    }
                    if (++redraw_counts[i] > redraw_cap) {
                        throw NumericError(
                            "stability_analysis: redraw budget exhausted on a "
                            "singular perturbed refit");
                    }
                }
            }
        } catch (...) {
            failures[worker] = std::current_exception();
        }
    };

    if (workers == 1) {
        run_range(0, 0, iterations);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (iterations + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(iterations, lo + chunk);
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
        throw NumericError(
            "stability_analysis: redraw budget exhausted across iterations");
    }

    PerturbationReport report;
    report.k = config.k;
    report.h = config.h;
    report.iterations = iterations;
    report.seed = seed;
    report.redraws = total_redraws;
    report.mean = vec_mean(changes);
    report.p025 = quantile_type7(changes, 0.025);
    report.p975 = quantile_type7(changes, 0.975);
    report.percent_changes = std::move(changes);
    return report;
}

} // namespace penreg
