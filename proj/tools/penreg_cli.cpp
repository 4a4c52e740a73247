// Command-line front end: fit, trace, diagnose, select-k, bootstrap,
// stability, and simulate over the library. JSON (or CSV for trace) goes
// to stdout or --out; with --out set, a 6-digit table is printed for
// reading. Exit codes: 0 ok, 1 usage, 2 data, 3 argument, 4 numeric.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "penreg/diagnostics.hpp"
#include "penreg/errors.hpp"
#include "penreg/estimation.hpp"
#include "penreg/inference.hpp"
#include "penreg/risk.hpp"
#include "penreg/selection.hpp"
#include "penreg/simulation.hpp"
#include "penreg/stability.hpp"
#include "penreg/tracegrid.hpp"

using json = nlohmann::ordered_json;
using namespace penreg;

namespace {

struct DatasetArgs {
    std::string path;
    std::string dependent;
};

void add_dataset_options(CLI::App* cmd, DatasetArgs& args) {
    cmd->add_option("--data", args.path, "CSV file with a header row")
        ->required();
    cmd->add_option("--dependent", args.dependent,
                    "column label of the dependent variable")
        ->required();
}

std::string checksum_hex(const std::string& path) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(path)));
    return buf;
}

json dataset_spec(const DatasetArgs& args) {
    json s;
    s["data"] = args.path;
    s["dependent"] = args.dependent;
    s["dataset_checksum"] = checksum_hex(args.path);
    return s;
}

json to_json(const Vector& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

json regressor_names(const Dataset& data) {
    json a = json::array();
    for (std::size_t j = 1; j < data.names.size(); ++j)
        a.push_back(data.names[j]);
    return a;
}

std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Machine output goes to --out when given, else to stdout; the human
// table is only printed when the machine output went to a file.
struct OutputSink {
    std::string out_path;

    bool to_file() const { return !out_path.empty(); }

    void write(const std::string& payload) const {
        if (!to_file()) {
            std::cout << payload;
            return;
        }
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw DataError("cannot open output file: " + out_path);
        file << payload;
        if (!file) throw DataError("cannot write output file: " + out_path);
    }

    void table(const std::vector<std::vector<std::string>>& rows) const {
        if (!to_file() || rows.empty()) return;
        std::vector<std::size_t> width;
        for (const auto& row : rows) {
            if (width.size() < row.size()) width.resize(row.size(), 0);
            for (std::size_t c = 0; c < row.size(); ++c)
                width[c] = std::max(width[c], row[c].size());
        }
        for (const auto& row : rows) {
            std::string line;
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) line += "  ";
                line += row[c];
                if (c + 1 < row.size())
                    line.append(width[c] - row[c].size(), ' ');
            }
            std::cout << line << "\n";
        }
    }
};

void emit_json(const OutputSink& sink, const json& doc) {
    sink.write(doc.dump(2) + "\n");
}

int run_fit(const DatasetArgs& ds, double k, double h,
            const std::vector<double>& k_pair, const std::string& divisor_name,
            bool dump, const OutputSink& sink) {
    const Dataset data = load_dataset(ds.path, ds.dependent);
    const AlphaVector alpha = compute_alpha(data);
    const Sigma2Divisor divisor = divisor_name == "n"
                                      ? Sigma2Divisor::observations
                                      : Sigma2Divisor::residual_df;

    FitResult fit;
    if (!k_pair.empty()) {
        fit = fit_penalized_two_k(data, alpha, k_pair[0], k_pair[1], h,
                                  divisor);
    } else {
        PenaltyConfig config;
        config.k = k;
        config.h = h;
        fit = fit_penalized(data, alpha, config, divisor);
    }

    json doc;
    doc["spec"] = dataset_spec(ds);
    doc["spec"]["subcommand"] = "fit";
    doc["spec"]["k"] = fit.config.k;
    doc["spec"]["h"] = fit.config.h;
    if (!k_pair.empty()) {
        doc["spec"]["k1"] = k_pair[0];
        doc["spec"]["k2"] = k_pair[1];
    }
    doc["spec"]["sigma2_divisor"] =
        divisor == Sigma2Divisor::observations ? "n" : "residual-df";
    doc["spec"]["format"] = "json";
    doc["names"] = json(data.names);
    doc["beta"] = to_json(fit.beta);
    doc["se"] = to_json(fit.se);
    doc["gof"] = fit.gof;
    doc["sigma2_hat"] = fit.sigma2_hat;
    doc["residual_sum"] = fit.residual_sum();
    doc["alpha"] = to_json(alpha);
    if (dump) {
        json d;
        d["dependent"] = data.dependent;
        d["names"] = json(data.names);
        d["n"] = data.n();
        d["p"] = data.p();
        d["y"] = to_json(data.y);
        json rows = json::array();
        for (std::size_t i = 0; i < data.n(); ++i)
            rows.push_back(to_json(data.X.row(i)));
        d["X"] = rows;
        doc["dataset"] = d;
    }
    emit_json(sink, doc);

    std::vector<std::vector<std::string>> rows{{"term", "estimate", "se"}};
    for (std::size_t i = 0; i < fit.beta.size(); ++i)
        rows.push_back({data.names[i], fmt6(fit.beta[i]), fmt6(fit.se[i])});
    rows.push_back({"gof", fmt6(fit.gof), ""});
    sink.table(rows);
    return 0;
}

int run_trace(const DatasetArgs& ds, double h, const std::string& grid_spec,
              std::size_t threads, const OutputSink& sink) {
    const Dataset data = load_dataset(ds.path, ds.dependent);
    const AlphaVector alpha = compute_alpha(data);
    const Vector grid = parse_grid(grid_spec);
    const TraceGrid trace = compute_trace(data, alpha, h, grid, threads);

    json spec = dataset_spec(ds);
    spec["subcommand"] = "trace";
    spec["h"] = h;
    spec["grid"] = grid_spec;
    spec["threads"] = threads;
    spec["format"] = "csv";

    std::ostringstream body;
    body << "# spec " << spec.dump() << "\n";
    write_trace_csv(trace, body);
    sink.write(body.str());
    return 0;
}

int run_diagnose(const DatasetArgs& ds, double k, const OutputSink& sink) {
    const Dataset data = load_dataset(ds.path, ds.dependent);
    const DiagnosticsReport report = full_report(data, k);

    json doc;
    doc["spec"] = dataset_spec(ds);
    doc["spec"]["subcommand"] = "diagnose";
    doc["spec"]["k"] = k;
    doc["spec"]["format"] = "json";
    doc["names"] = regressor_names(data);
    doc["cv"] = to_json(report.cv);
    doc["vif"] = to_json(report.vif);
    doc["cn"] = report.cn;
    doc["corr_det"] = report.corr_det;
    doc["cv_trouble"] = report.cv_trouble;
    doc["vif_trouble"] = report.vif_trouble;
    doc["cn_trouble_20"] = report.cn_trouble_20;
    doc["cn_trouble_30"] = report.cn_trouble_30;
    doc["det_trouble"] = report.det_trouble;
    doc["has_infinite_cv"] = report.has_infinite_cv;
    emit_json(sink, doc);

    std::vector<std::vector<std::string>> rows{{"term", "cv", "vif"}};
    for (std::size_t i = 0; i < report.vif.size(); ++i)
        rows.push_back({data.names[i + 1], fmt6(report.cv[i]),
                        fmt6(report.vif[i])});
    rows.push_back({"cn", fmt6(report.cn), ""});
    rows.push_back({"corr_det", fmt6(report.corr_det), ""});
    sink.table(rows);
    return 0;
}

int run_select_k(const DatasetArgs& ds, const std::string& criterion_name,
                 std::optional<double> threshold, double h,
                 const std::string& grid_spec, const OutputSink& sink) {
    const SelectionCriterion criterion =
        selection_criterion_from_string(criterion_name);
    if (criterion != SelectionCriterion::min_mse && !threshold)
        throw InvalidArgument("criterion " + criterion_name +
                              " needs --threshold");

    const Dataset data = load_dataset(ds.path, ds.dependent);
    const AlphaVector alpha = compute_alpha(data);
    const Vector grid = parse_grid(grid_spec);
    const SelectionResult result =
        select_k(data, alpha, h, grid, criterion, threshold.value_or(0.0));

    json doc;
    doc["spec"] = dataset_spec(ds);
    doc["spec"]["subcommand"] = "select-k";
    doc["spec"]["criterion"] = to_string(criterion);
    doc["spec"]["threshold"] =
        threshold ? json(*threshold) : json(nullptr);
    doc["spec"]["h"] = h;
    doc["spec"]["grid"] = grid_spec;
    doc["spec"]["format"] = "json";
    doc["criterion"] = to_string(result.criterion);
    doc["k_selected"] =
        result.k_selected ? json(*result.k_selected) : json(nullptr);
    doc["attained_value"] = result.attained_value;
    doc["threshold"] = result.threshold;
    emit_json(sink, doc);

    sink.table({{"criterion", "k_selected", "attained"},
                {to_string(result.criterion),
                 result.k_selected ? fmt6(*result.k_selected) : "none",
                 fmt6(result.attained_value)}});
    return 0;
}

json summary_json(const BootstrapSummary& s, bool include_draws) {
    json doc;
    doc["statistic"] = s.statistic;
    doc["theta_hat"] = s.theta_hat;
    doc["theta_bar"] = s.theta_bar;
    doc["sigma_theta"] = s.sigma_theta;
    doc["interval_normal"] =
        json::array({s.interval_normal.first, s.interval_normal.second});
    doc["interval_percentile"] = json::array(
        {s.interval_percentile.first, s.interval_percentile.second});
    doc["excludes_zero"] =
        s.interval_percentile.first > 0.0 || s.interval_percentile.second < 0.0;
    if (include_draws) doc["draws"] = to_json(s.draws);
    return doc;
}

int run_bootstrap(const DatasetArgs& ds, double k, double h, std::size_t m,
                  std::uint64_t seed, std::size_t threads,
                  const std::string& policy_name, bool include_draws,
                  const OutputSink& sink) {
    const Dataset data = load_dataset(ds.path, ds.dependent);
    const AlphaVector alpha = compute_alpha(data);
    PenaltyConfig config;
    config.k = k;
    config.h = h;
    const AlphaPolicy policy = alpha_policy_from_string(policy_name);
    const BootstrapResult result =
        bootstrap(data, alpha, policy, config, m, seed, threads);

    json doc;
    doc["spec"] = dataset_spec(ds);
    doc["spec"]["subcommand"] = "bootstrap";
    doc["spec"]["k"] = k;
    doc["spec"]["h"] = h;
    doc["spec"]["m"] = m;
    doc["spec"]["seed"] = seed;
    doc["spec"]["threads"] = threads;
    doc["spec"]["alpha_policy"] = to_string(policy);
    doc["spec"]["format"] = "json";
    doc["names"] = json(data.names);
    json coeffs = json::array();
    for (const BootstrapSummary& s : result.coefficients)
        coeffs.push_back(summary_json(s, include_draws));
    doc["coefficients"] = coeffs;
    doc["gof"] = summary_json(result.gof, include_draws);
    doc["redraws"] = result.redraws;
    doc["seed"] = result.seed;
    emit_json(sink, doc);

    std::vector<std::vector<std::string>> rows{
        {"statistic", "theta_hat", "theta_bar", "sigma", "perc_lo",
         "perc_hi"}};
    for (const BootstrapSummary& s : result.coefficients)
        rows.push_back({s.statistic, fmt6(s.theta_hat), fmt6(s.theta_bar),
                        fmt6(s.sigma_theta), fmt6(s.interval_percentile.first),
                        fmt6(s.interval_percentile.second)});
    sink.table(rows);
    return 0;
}

int run_stability(const DatasetArgs& ds, double k, double h,
                  std::size_t iterations, std::uint64_t seed,
                  std::size_t threads, const std::string& policy_name,
                  bool include_draws, const OutputSink& sink) {
    const Dataset data = load_dataset(ds.path, ds.dependent);
    const AlphaVector alpha = compute_alpha(data);
    PenaltyConfig config;
    config.k = k;
    config.h = h;
    const AlphaPolicy policy = alpha_policy_from_string(policy_name);
    const PerturbationReport report = stability_analysis(
        data, alpha, policy, config, iterations, seed, threads);

    json doc;
    doc["spec"] = dataset_spec(ds);
    doc["spec"]["subcommand"] = "stability";
    doc["spec"]["k"] = k;
    doc["spec"]["h"] = h;
    doc["spec"]["iterations"] = iterations;
    doc["spec"]["seed"] = seed;
    doc["spec"]["threads"] = threads;
    doc["spec"]["alpha_policy"] = to_string(policy);
    doc["spec"]["format"] = "json";
    doc["mean_percent_change"] = report.mean;
    doc["p025"] = report.p025;
    doc["p975"] = report.p975;
    doc["iterations"] = report.iterations;
    doc["redraws"] = report.redraws;
    doc["seed"] = report.seed;
    if (include_draws) doc["percent_changes"] = to_json(report.percent_changes);
    emit_json(sink, doc);

    sink.table({{"mean", "p025", "p975"},
                {fmt6(report.mean), fmt6(report.p025), fmt6(report.p975)}});
    return 0;
}

json quartiles_json(const QuartileRow& q) {
    json doc;
    doc["q1"] = q.q1;
    doc["mean"] = q.mean;
    doc["q3"] = q.q3;
    return doc;
}

json profile_json(const ProfileRow& p) {
    json doc;
    doc["min"] = p.min;
    doc["mean"] = p.mean;
    doc["median"] = p.median;
    doc["max"] = p.max;
    return doc;
}

int run_simulate(std::size_t replications, double grid_stop, double grid_step,
                 const std::string& plug_in_name, std::uint64_t seed,
                 std::size_t threads, bool include_records,
                 const OutputSink& sink) {
    SimulationPlan plan;
    plan.replications = replications;
    plan.grid_stop = grid_stop;
    plan.grid_step = grid_step;
    plan.plug_in = mse_plugin_from_string(plug_in_name);
    plan.seed = seed;
    plan.threads = threads;
    const SimulationSummary summary = run_simulation(plan);

    json doc;
    json spec;
    spec["subcommand"] = "simulate";
    spec["replications"] = replications;
    spec["grid_stop"] = grid_stop;
    spec["grid_step"] = grid_step;
    spec["plug_in"] = to_string(plan.plug_in);
    spec["seed"] = seed;
    spec["threads"] = threads;
    spec["format"] = "json";
    doc["spec"] = spec;

    static const char* kLabels[] = {"A", "B", "C", "D", "E", "F",
                                    "unresolved"};
    json counts;
    for (std::size_t i = 0; i < summary.counts.size(); ++i)
        counts[kLabels[i]] = summary.counts[i];
    doc["counts"] = counts;
    doc["resolved"] = summary.resolved;
    doc["redraws"] = summary.redraws;
    json profiles;
    profiles["min_cv"] = profile_json(summary.profile_min_cv);
    profiles["max_vif"] = profile_json(summary.profile_max_vif);
    profiles["cn"] = profile_json(summary.profile_cn);
    doc["profiles"] = profiles;
    json cases = json::array();
    for (const CaseSummary& c : summary.cases) {
        json row;
        row["label"] = to_string(c.label);
        row["count"] = c.count;
        if (c.count > 0) {
            row["min_cv"] = quartiles_json(c.min_cv);
            row["max_vif"] = quartiles_json(c.max_vif);
            row["cn"] = quartiles_json(c.cn);
        }
        cases.push_back(row);
    }
    doc["cases"] = cases;
    if (include_records) {
        json records = json::array();
        for (const SimulationRecord& r : summary.records) {
            json row;
            row["p"] = r.config.p;
            row["xi"] = r.config.xi;
            row["sigma_w"] = r.config.sigma_w;
            row["n"] = r.config.n;
            row["mse_ols"] = r.mse_ols;
            row["mse_ridge_min"] =
                r.mse_ridge_min ? json(*r.mse_ridge_min) : json(nullptr);
            row["mse_pen_min"] =
                r.mse_pen_min ? json(*r.mse_pen_min) : json(nullptr);
            row["min_cv"] = r.min_cv;
            row["max_vif"] = r.max_vif;
            row["cn"] = r.cn;
            row["label"] = to_string(r.label);
            records.push_back(row);
        }
        doc["records"] = records;
    }
    emit_json(sink, doc);

    std::vector<std::vector<std::string>> rows{{"case", "count"}};
    for (std::size_t i = 0; i < summary.counts.size(); ++i)
        rows.push_back({kLabels[i], std::to_string(summary.counts[i])});
    sink.table(rows);
    return 0;
}

int fail(const char* type, const std::string& message, int code) {
    json doc;
    doc["error"]["type"] = type;
    doc["error"]["message"] = message;
    doc["error"]["exit"] = code;
    std::cerr << doc.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shrinkage-regression toolkit: penalized least squares "
                 "pulling coefficients toward simple-regression slopes"};
    app.require_subcommand(1);
    // --h is a model parameter, so help must not claim the short -h.
    app.set_help_flag("--help", "print help");
    const auto make_sub = [&app](const std::string& name,
                                 const std::string& desc) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->set_help_flag("--help", "print help");
        return cmd;
    };

    DatasetArgs fit_ds;
    double fit_k = 0.0, fit_h = 1.0;
    std::vector<double> fit_k_pair;
    std::string fit_divisor = "residual-df";
    bool fit_dump = false;
    std::string fit_out;
    auto* fit_cmd = make_sub("fit", "penalized least-squares fit");
    add_dataset_options(fit_cmd, fit_ds);
    fit_cmd->add_option("--k", fit_k, "penalty weight, k >= 0");
    fit_cmd->add_option("--h", fit_h, "shrinkage switch, 0 or 1");
    fit_cmd->add_option("--k-pair", fit_k_pair,
                        "two-parameter form k1 k2 with k = k2/k1")
        ->expected(2);
    fit_cmd->add_option("--sigma2-divisor", fit_divisor,
                        "residual-df (n-p) or n")
        ->check(CLI::IsMember({"residual-df", "n"}));
    fit_cmd->add_flag("--dump", fit_dump, "embed the parsed dataset");
    fit_cmd->add_option("--out", fit_out, "write JSON here");

    DatasetArgs trace_ds;
    double trace_h = 1.0;
    std::string trace_grid = kTraceGridSpec;
    std::size_t trace_threads = 1;
    std::string trace_out;
    auto* trace_cmd =
        make_sub("trace", "coefficient and diagnostic trace CSV");
    add_dataset_options(trace_cmd, trace_ds);
    trace_cmd->add_option("--h", trace_h, "shrinkage switch, 0 or 1")
        ->required();
    trace_cmd->add_option("--grid", trace_grid, "start:stop:step");
    trace_cmd->add_option("--threads", trace_threads, "worker cap")
        ->envname("PENREG_THREADS");
    trace_cmd->add_option("--out", trace_out, "write CSV here");

    DatasetArgs diag_ds;
    double diag_k = 0.0;
    std::string diag_out;
    auto* diag_cmd =
        make_sub("diagnose", "collinearity diagnostics at one k");
    add_dataset_options(diag_cmd, diag_ds);
    diag_cmd->add_option("--k", diag_k, "penalty weight, k >= 0");
    diag_cmd->add_option("--out", diag_out, "write JSON here");

    DatasetArgs sel_ds;
    std::string sel_criterion;
    std::optional<double> sel_threshold;
    double sel_h = 1.0;
    std::string sel_grid = kDiagnosticsGridSpec;
    std::string sel_out;
    auto* sel_cmd = make_sub("select-k", "automatic k selection");
    add_dataset_options(sel_cmd, sel_ds);
    sel_cmd->add_option("--criterion", sel_criterion,
                        "vif | cn | min-mse | alpha-distance")
        ->required();
    sel_cmd->add_option("--threshold", sel_threshold,
                        "criterion threshold (vif/cn/alpha-distance)");
    sel_cmd->add_option("--h", sel_h, "shrinkage switch, 0 or 1");
    sel_cmd->add_option("--grid", sel_grid, "start:stop:step");
    sel_cmd->add_option("--out", sel_out, "write JSON here");

    DatasetArgs boot_ds;
    double boot_k = 0.0, boot_h = 1.0;
    std::size_t boot_m = 10000;
    std::uint64_t boot_seed = 1;
    std::size_t boot_threads = 1;
    std::string boot_policy = "fixed";
    bool boot_draws = false;
    std::string boot_out;
    auto* boot_cmd =
        make_sub("bootstrap", "row-resampling intervals");
    add_dataset_options(boot_cmd, boot_ds);
    boot_cmd->add_option("--k", boot_k, "penalty weight, k >= 0");
    boot_cmd->add_option("--h", boot_h, "shrinkage switch, 0 or 1");
    boot_cmd->add_option("--m", boot_m, "number of resamples");
    boot_cmd->add_option("--seed", boot_seed, "RNG seed");
    boot_cmd->add_option("--threads", boot_threads, "worker cap")
        ->envname("PENREG_THREADS");
    boot_cmd->add_option("--alpha-policy", boot_policy,
                         "fixed or recomputed target inside refits")
        ->check(CLI::IsMember({"fixed", "recomputed"}));
    boot_cmd->add_flag("--include-draws", boot_draws,
                       "embed all resample draws");
    boot_cmd->add_option("--out", boot_out, "write JSON here");

    DatasetArgs stab_ds;
    double stab_k = 0.0, stab_h = 1.0;
    std::size_t stab_iters = 1000;
    std::uint64_t stab_seed = 1;
    std::size_t stab_threads = 1;
    std::string stab_policy = "fixed";
    bool stab_draws = false;
    std::string stab_out;
    auto* stab_cmd =
        make_sub("stability", "1% design-perturbation analysis");
    add_dataset_options(stab_cmd, stab_ds);
    stab_cmd->add_option("--k", stab_k, "penalty weight, k >= 0");
    stab_cmd->add_option("--h", stab_h, "shrinkage switch, 0 or 1");
    stab_cmd->add_option("--iterations", stab_iters, "perturbation count");
    stab_cmd->add_option("--seed", stab_seed, "RNG seed");
    stab_cmd->add_option("--threads", stab_threads, "worker cap")
        ->envname("PENREG_THREADS");
    stab_cmd->add_option("--alpha-policy", stab_policy,
                         "fixed or recomputed target inside refits")
        ->check(CLI::IsMember({"fixed", "recomputed"}));
    stab_cmd->add_flag("--include-draws", stab_draws,
                       "embed per-iteration percent changes");
    stab_cmd->add_option("--out", stab_out, "write JSON here");

    std::size_t sim_reps = 1440;
    double sim_stop = 1.0, sim_step = 0.01;
    std::string sim_plug_in = "truth";
    std::uint64_t sim_seed = 1;
    std::size_t sim_threads = 1;
    bool sim_records = false;
    std::string sim_out;
    auto* sim_cmd = make_sub(
        "simulate", "Monte Carlo comparison of ridge and shrunk fits");
    sim_cmd->add_option("--replications", sim_reps, "number of replications");
    sim_cmd->add_option("--grid-stop", sim_stop, "last grid value");
    sim_cmd->add_option("--grid-step", sim_step, "grid increment");
    sim_cmd->add_option("--plug-in", sim_plug_in,
                        "MSE plug-ins: truth or estimated")
        ->check(CLI::IsMember({"truth", "true", "estimated"}));
    sim_cmd->add_option("--seed", sim_seed, "RNG seed");
    sim_cmd->add_option("--threads", sim_threads, "worker cap")
        ->envname("PENREG_THREADS");
    sim_cmd->add_flag("--include-records", sim_records,
                      "embed one row per replication");
    sim_cmd->add_option("--out", sim_out, "write JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 1);
    }

    try {
        if (*fit_cmd)
            return run_fit(fit_ds, fit_k, fit_h, fit_k_pair, fit_divisor,
                           fit_dump, OutputSink{fit_out});
        if (*trace_cmd)
            return run_trace(trace_ds, trace_h, trace_grid, trace_threads,
                             OutputSink{trace_out});
        if (*diag_cmd)
            return run_diagnose(diag_ds, diag_k, OutputSink{diag_out});
        if (*sel_cmd)
            return run_select_k(sel_ds, sel_criterion, sel_threshold, sel_h,
                                sel_grid, OutputSink{sel_out});
        if (*boot_cmd)
            return run_bootstrap(boot_ds, boot_k, boot_h, boot_m, boot_seed,
                                 boot_threads, boot_policy, boot_draws,
                                 OutputSink{boot_out});
        if (*stab_cmd)
            return run_stability(stab_ds, stab_k, stab_h, stab_iters,
                                 stab_seed, stab_threads, stab_policy,
                                 stab_draws, OutputSink{stab_out});
        if (*sim_cmd)
            return run_simulate(sim_reps, sim_stop, sim_step, sim_plug_in,
                                sim_seed, sim_threads, sim_records,
                                OutputSink{sim_out});
        return fail("usage", "no subcommand given", 1);
    } catch (const DataError& e) {
        return fail("data", e.what(), 2);
    } catch (const InvalidArgument& e) {
        return fail("argument", e.what(), 3);
    } catch (const NumericError& e) {
        return fail("numeric", e.what(), 4);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 5);
    }
}
