#include "penreg/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "penreg/diagnostics.hpp"
#include "penreg/errors.hpp"

namespace penreg {

PenaltyWeights weights_from_k(double k) {
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw InvalidArgument("weights_from_k: k must be finite and >= 0");
    }
    PenaltyWeights w;
    w.k1 = 1.0 / (1.0 + k);
    w.k2 = k / (1.0 + k);
    return w;
}

double alpha_distance(const Dataset& data, const AlphaVector& alpha, double k,
                      double h) {
    const double denom = norm2(alpha);
    if (denom <= 0.0) {
        throw InvalidArgument("alpha_distance: alpha has zero norm");
    }
    PenaltyConfig config;
    config.k = k;
    config.h = h;
    const FitResult fit = fit_penalized(data, alpha, config);
    return norm2(vec_sub(alpha, fit.beta)) / denom;
}

namespace {

void check_grid(const Vector& grid) {
    if (grid.empty()) {
        throw InvalidArgument("select_k: empty grid");
    }
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (!std::isfinite(grid[j]) || grid[j] < 0.0) {
            throw InvalidArgument("select_k: grid values must be finite and >= 0");
        }
        if (j > 0 && grid[j] <= grid[j - 1]) {
            throw InvalidArgument("select_k: grid must be strictly increasing");
        }
    }
}

// Smallest grid k whose measure falls below the threshold; when none does,
// the result is absent and attained_value reports the grid's best measure.
template <typename Measure>
SelectionResult scan_threshold(const Vector& grid, SelectionCriterion criterion,
                               double threshold, Measure measure) {
    SelectionResult result;
    result.criterion = criterion;
    result.threshold = threshold;
    double best = std::numeric_limits<double>::infinity();
    for (double k : grid) {
        const double value = measure(k);
        best = std::min(best, value);
        if (value < threshold) {
            result.k_selected = k;
            result.attained_value = value;
            return result;
        }
    }
    result.attained_value = best;
    return result;
}

} // namespace

SelectionResult select_k(const Dataset& data, const AlphaVector& alpha,
                         double h, const Vector& grid,
                         SelectionCriterion criterion, double threshold) {
    check_grid(grid);
    switch (criterion) {
    case SelectionCriterion::vif_threshold:
        return scan_threshold(grid, criterion, threshold, [&](double k) {
            const std::vector<double> vifs = vif_extended(data, k);
            return *std::max_element(vifs.begin(), vifs.end());
        });
    case SelectionCriterion::cn_threshold:
        return scan_threshold(grid, criterion, threshold, [&](double k) {
            return condition_number_extended(data, k);
        });
    case SelectionCriterion::alpha_distance:
        return scan_threshold(grid, criterion, threshold, [&](double k) {
            return alpha_distance(data, alpha, k, h);
        });
    case SelectionCriterion::min_mse: {
        const Vector beta = ols_beta(data.X, data.y);
        const double sigma2 = sigma2_hat(data, Sigma2Divisor::residual_df);
        const GridMinimum minimum =
            minimize_mse_grid(data, alpha, h, grid, beta, sigma2);
        SelectionResult result;
        result.criterion = criterion;
        result.threshold = threshold;
        result.k_selected = minimum.k_star;
        result.attained_value = minimum.mse_star;
        return result;
    }
    case SelectionCriterion::stability_visual:
        throw InvalidArgument(
            "select_k: stability_visual has no automatic stopping rule; "
            "inspect the coefficient trace instead");
    }
    throw InvalidArgument("select_k: unknown criterion");
}

SelectionCriterion selection_criterion_from_string(const std::string& name) {
    if (name == "vif" || name == "vif_threshold") {
        return SelectionCriterion::vif_threshold;
    }
    if (name == "cn" || name == "cn_threshold") {
        return SelectionCriterion::cn_threshold;
    }
    if (name == "min-mse" || name == "min_mse" || name == "mse") {
        return SelectionCriterion::min_mse;
    }
    if (name == "alpha-distance" || name == "alpha_distance") {
        return SelectionCriterion::alpha_distance;
    }
    if (name == "stability" || name == "stability_visual") {
        return SelectionCriterion::stability_visual;
    }
    throw InvalidArgument("unknown selection criterion: " + name);
}

std::string to_string(SelectionCriterion c) {
    switch (c) {
    case SelectionCriterion::vif_threshold: return "vif_threshold";
    case SelectionCriterion::cn_threshold: return "cn_threshold";
    case SelectionCriterion::min_mse: return "min_mse";
    case SelectionCriterion::alpha_distance: return "alpha_distance";
    case SelectionCriterion::stability_visual: return "stability_visual";
    }
    return "unknown";
}

} // namespace penreg
