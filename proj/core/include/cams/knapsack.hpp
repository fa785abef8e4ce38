#pragma once

#include <vector>

#include "cams/decision_support.hpp"

// Knapsack with sigmoid utilities: maximize sum_k w_k f_k(t_k) subject to
// sum_k t_k <= budget, t_k >= 0. NP-hard; the solver below returns a
// 2-factor approximation through the alpha-parametrized fractional
// relaxation.

namespace cams::dss {

struct SigmoidItem {
  Curve utility;     // nondecreasing, values in [0, 1]
  Curve derivative;  // utility'
  double weight = 1.0;
  double inflection = 0.0;  // argmax of the derivative

  double peak_slope() const { return derivative(inflection); }
};

/// Builds an item from its utility alone: the derivative is a central
/// difference (one-sided at 0) and the inflection point is located on
/// [0, horizon] by a dense scan refined with golden-section search.
SigmoidItem make_sigmoid_item(Curve utility, double weight, double horizon);

/// max{t : f'(t) = slope} on the post-inflection branch, or 0 when the slope
/// exceeds the peak slope.
double sigmoid_pseudo_inverse(const SigmoidItem& item, double slope);

struct KnapsackSolution {
  std::vector<double> allocations;
  double value = 0.0;  // sum_k w_k f_k(allocation_k)
  double alpha = 0.0;  // maximizer of the relaxation value
};

/// Optimal value of the alpha-parametrized fractional knapsack.
double relaxation_value(const std::vector<SigmoidItem>& items, double budget, double alpha);

KnapsackSolution knapsack_sigmoid(const std::vector<SigmoidItem>& items, double budget);

/// Allocation per region when tasks carry no deadline: maximize
/// sum_k q_k w_k f_k(t_k) subject to sum_k q_k t_k <= 1 / lambda. Solved as a
/// sigmoid knapsack over the resource s_k = q_k t_k.
std::vector<double> no_deadline_allocation(const routing::RoutingPolicy& routing,
                                           const std::vector<TaskSnapshot>& tasks, double arrival_rate);

}  // namespace cams::dss
