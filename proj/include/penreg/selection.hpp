// Penalty selection: the four automatic criteria and the (k1, k2)
// weight interpretation of a given k.
#pragma once

#include <optional>
#include <string>

#include "penreg/estimation.hpp"
#include "penreg/risk.hpp"

namespace penreg {

enum class SelectionCriterion {
    vif_threshold,
    cn_threshold,
    min_mse,
    alpha_distance,
    stability_visual,
};

struct SelectionResult {
    SelectionCriterion criterion = SelectionCriterion::min_mse;
    std::optional<double> k_selected;
    // Value of the criterion's measure at the selected k; when nothing on
    // the grid qualifies, the best value the grid attained.
    double attained_value = 0.0;
    double threshold = 0.0;
};

struct PenaltyWeights {
    double k1 = 0.0;
    double k2 = 0.0;
};

// k1 = 1/(1+k), k2 = k/(1+k); the relative weights of the residual and
// shrinkage summands.
PenaltyWeights weights_from_k(double k);

// ||alpha - beta(k,h)|| / ||alpha||, Euclidean norms.
double alpha_distance(const Dataset& data, const AlphaVector& alpha, double k,
                      double h);

// Scans the grid for the smallest k meeting the criterion; min_mse
// delegates to the MSE grid minimizer. The visual trace criterion has no
// stopping rule and is rejected here.
SelectionResult select_k(const Dataset& data, const AlphaVector& alpha,
                         double h, const Vector& grid,
                         SelectionCriterion criterion, double threshold);

SelectionCriterion selection_criterion_from_string(const std::string& name);
std::string to_string(SelectionCriterion c);

} // namespace penreg
