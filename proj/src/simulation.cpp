#include "penreg/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "penreg/diagnostics.hpp"

namespace penreg {

namespace {

constexpr std::array<double, 4> kXiSet = {0.96, 0.97, 0.98, 0.99};
constexpr std::array<double, 5> kSigmaWSet = {0.01, 0.1, 5.0, 10.0, 15.0};

bool in_set(double value, const double* begin, const double* end) {
    return std::find(begin, end, value) != end;
}

} // namespace

void validate(const SimulationConfig& config) {
    if (config.p < 3 || config.p > 6) {
        throw InvalidArgument("simulation: p must be one of 3, 4, 5, 6");
    }
    if (!in_set(config.xi, kXiSet.begin(), kXiSet.end())) {
        throw InvalidArgument("simulation: xi must be one of 0.96..0.99");
    }
    if (!in_set(config.sigma_w, kSigmaWSet.begin(), kSigmaWSet.end())) {
        throw InvalidArgument(
            "simulation: sigma_w must be one of 0.01, 0.1, 5, 10, 15");
    }
    if (config.n < 30 || config.n > 200 || config.n % 10 != 0) {
        throw InvalidArgument("simulation: n must be one of 30, 40, ..., 200");
    }
}

GeneratedModel generate_design(const SimulationConfig& config, Rng& rng) {
    validate(config);
    const std::size_t n = config.n;
    const std::size_t p = config.p;
    const std::size_t q = p - 1;

    Matrix W(n, q);
    for (std::size_t j = 0; j < q; ++j) {
        const double mu =
            2.0 * (static_cast<double>(rng.uniform_int(11)) - 5.0);
        for (std::size_t i = 0; i < n; ++i) {
            W(i, j) = mu + config.sigma_w * rng.normal();
        }
    }

    const double carry = std::sqrt(1.0 - config.xi * config.xi);
    Matrix regressors(n, q);
    std::vector<std::string> names(q);
    for (std::size_t j = 0; j < q; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            regressors(i, j) = carry * W(i, j) + W(i, q - 1);
        }
        names[j] = "x" + std::to_string(j + 2);
    }

    Vector beta(p);
    for (std::size_t j = 0; j < p; ++j) {
        const double magnitude = 1.0 + static_cast<double>(rng.uniform_int(5));
        beta[j] = rng.uniform_int(2) == 0 ? magnitude : -magnitude;
    }

    GeneratedModel model;
    model.beta_true = beta;
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double mean = beta[0];
        for (std::size_t j = 0; j < q; ++j) {
            mean += regressors(i, j) * beta[j + 1];
        }
        y[i] = mean + rng.normal();
    }
    model.data = make_dataset(y, regressors, names, "y");
    return model;
}

CaseLabel classify(double mse_ols, const std::optional<double>& mse_ridge,
                   const std::optional<double>& mse_pen) {
    if (!mse_ridge.has_value() || !mse_pen.has_value()) {
        return CaseLabel::unresolved;
    }
    const double r = *mse_ridge;
    const double p = *mse_pen;
    if (p < r && r < mse_ols) return CaseLabel::A;
    if (p < mse_ols && mse_ols < r) return CaseLabel::B;
    if (r < p && p < mse_ols) return CaseLabel::C;
    if (r < mse_ols && mse_ols < p) return CaseLabel::D;
    if (mse_ols < p && p < r) return CaseLabel::E;
    return CaseLabel::F;
}

std::string to_string(CaseLabel label) {
    switch (label) {
    case CaseLabel::A: return "A";
    case CaseLabel::B: return "B";
    case CaseLabel::C: return "C";
    case CaseLabel::D: return "D";
    case CaseLabel::E: return "E";
    case CaseLabel::F: return "F";
    case CaseLabel::unresolved: return "unresolved";
    }
    return "unknown";
}

MsePlugin mse_plugin_from_string(const std::string& name) {
    if (name == "estimated") return MsePlugin::estimated;
    if (name == "truth" || name == "true") return MsePlugin::truth;
    throw InvalidArgument("unknown MSE plug-in policy: " + name);
}

std::string to_string(MsePlugin plug_in) {
    return plug_in == MsePlugin::estimated ? "estimated" : "truth";
}

namespace {

SimulationConfig draw_cell(Rng& rng) {
    SimulationConfig config;
    config.p = 3 + rng.uniform_int(4);
    config.xi = kXiSet[rng.uniform_int(4)];
    config.sigma_w = kSigmaWSet[rng.uniform_int(5)];
    config.n = 30 + 10 * rng.uniform_int(18);
    return config;
}

SimulationRecord evaluate_replication(const SimulationConfig& config,
                                      const GeneratedModel& model,
                                      const Vector& grid,
                                      MsePlugin plug_in) {
    const Dataset& data = model.data;
    const AlphaVector alpha = compute_alpha(data);

    Vector beta_plug = model.beta_true;
    double sigma2 = 1.0;
    if (plug_in == MsePlugin::estimated) {
        beta_plug = ols_beta(data.X, data.y);
        sigma2 = sigma2_hat(data, Sigma2Divisor::residual_df);
    }

    PenaltyConfig at_zero;
    at_zero.k = 0.0;
    at_zero.h = 0.0;
    SimulationRecord record;
    record.config = config;
    record.mse_ols = mse(data, alpha, at_zero, beta_plug, sigma2).total;

    const GridMinimum ridge =
        minimize_mse_grid(data, alpha, 0.0, grid, beta_plug, sigma2);
    const GridMinimum pen =
        minimize_mse_grid(data, alpha, 1.0, grid, beta_plug, sigma2);
    if (ridge.k_star.has_value()) record.mse_ridge_min = ridge.mse_star;
    if (pen.k_star.has_value()) record.mse_pen_min = pen.mse_star;
    record.ridge_uniqueness = ridge.uniqueness;
    record.pen_uniqueness = pen.uniqueness;
    record.label =
        classify(record.mse_ols, record.mse_ridge_min, record.mse_pen_min);

    const DiagnosticsReport diag = full_report(data, 0.0);
    record.min_cv = *std::min_element(diag.cv.begin(), diag.cv.end());
    record.max_vif = *std::max_element(diag.vif.begin(), diag.vif.end());
    record.cn = diag.cn;
    return record;
}

ProfileRow profile(const Vector& values) {
    ProfileRow row;
    row.min = *std::min_element(values.begin(), values.end());
    row.max = *std::max_element(values.begin(), values.end());
    row.mean = vec_mean(values);
    row.median = quantile_type7(values, 0.5);
    return row;
}

QuartileRow quartiles(const Vector& values) {
    QuartileRow row;
    row.q1 = quantile_type7(values, 0.25);
    row.mean = vec_mean(values);
    row.q3 = quantile_type7(values, 0.75);
    return row;
}

} // namespace

SimulationSummary run_simulation(const SimulationPlan& plan) {
    if (plan.replications < 1) {
        throw InvalidArgument("run_simulation: replications must be >= 1");
    }
    if (!(plan.grid_stop > 0.0) || !(plan.grid_step > 0.0)) {
        throw InvalidArgument("run_simulation: grid stop and step must be > 0");
    }
    const Vector grid = uniform_grid(0.0, plan.grid_stop, plan.grid_step);
    const std::size_t reps = plan.replications;
    const std::size_t redraw_cap = 10 * reps;

    std::vector<SimulationRecord> records(reps);
    std::vector<std::size_t> redraw_counts(reps, 0);
    const std::size_t workers =
        std::max<std::size_t>(1, std::min(plan.threads, reps));
    std::vector<std::exception_ptr> failures(workers);

    auto run_range = [&](std::size_t worker, std::size_t lo, std::size_t hi) {
        try {
            for (std::size_t r = lo; r < hi; ++r) {
                Rng rng(plan.seed, r);
                for (;;) {
                    const SimulationConfig cell = draw_cell(rng);
                    try {
                        const GeneratedModel model = generate_design(cell, rng);
                        records[r] =
                            evaluate_replication(cell, model, grid,
                                                 plan.plug_in);
                        break;
                    } catch (const NumericError&) {
                    } catch (const InvalidArgument&) {
                    } catch (const DataError&) {
                    }
                    if (++redraw_counts[r] > redraw_cap) {
                        throw NumericError(
                            "run_simulation: redraw budget exhausted on a "
                            "degenerate replication");
                    }
                }
            }
        } catch (...) {
            failures[worker] = std::current_exception();
        }
    };

    if (workers == 1) {
        run_range(0, 0, reps);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (reps + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(reps, lo + chunk);
            pool.emplace_back(run_range, w, lo, hi);
        }
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& e : failures) {
        if (e) std::rethrow_exception(e);
    }

    SimulationSummary summary;
    summary.plan = plan;
    for (std::size_t c : redraw_counts) summary.redraws += c;
    if (summary.redraws > redraw_cap) {
        throw NumericError(
            "run_simulation: redraw budget exhausted across replications");
    }

    Vector cvs(reps), vifs(reps), cns(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        cvs[r] = records[r].min_cv;
        vifs[r] = records[r].max_vif;
        cns[r] = records[r].cn;
        summary.counts[static_cast<std::size_t>(records[r].label)]++;
    }
    summary.resolved =
        reps - summary.counts[static_cast<std::size_t>(CaseLabel::unresolved)];
    summary.profile_min_cv = profile(cvs);
    summary.profile_max_vif = profile(vifs);
    summary.profile_cn = profile(cns);

    for (int label = 0; label < 7; ++label) {
        CaseSummary cs;
        cs.label = static_cast<CaseLabel>(label);
        Vector cv, vif, cn;
        for (const SimulationRecord& rec : records) {
            if (static_cast<int>(rec.label) != label) continue;
            cv.push_back(rec.min_cv);
            vif.push_back(rec.max_vif);
            cn.push_back(rec.cn);
        }
        cs.count = cv.size();
        if (cs.count > 0) {
            cs.min_cv = quartiles(cv);
            cs.max_vif = quartiles(vif);
            cs.cn = quartiles(cn);
        }
        summary.cases.push_back(cs);
    }
    summary.records = std::move(records);
    return summary;
}

} // namespace penreg
