#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cams/ddm.hpp"
#include "cams/decision_support.hpp"
#include "cams/knapsack.hpp"
#include "cams/matrix.hpp"

// Independent reference computations used to check the library. None of
// them calls the routine it checks.

namespace cams::validation {

/// Mean first exit time of dx = mu dt + sigma dW from (-eta, eta), started
/// at x0, by Euler stepping with a Brownian-bridge correction for crossings
/// between grid points.
double mc_first_passage_time(double x0, const ddm::DdmParams& params, std::size_t paths, double dt,
                             std::uint64_t seed);

struct GridMax {
  double argmax = 0.0;
  double value = 0.0;
};

/// Maximum of f over {lo, lo + step, ..., hi}; ties go to the smallest point.
GridMax dense_grid_max(const std::function<double(double)>& f, double lo, double hi, double step);

struct Enumeration {
  double value = 0.0;             // (1/N) sum of stage rewards along the best sequence
  double first_action = 0.0;      // first duration of the best sequence
  std::size_t sequences = 0;      // number of action sequences visited
};

/// Brute force over every action sequence of the horizon problem. When
/// `snap` is set the predicted queue length is projected on the state grid
/// after every stage, as the solver does; otherwise it is propagated exactly.
Enumeration enumerate_horizon(const dss::HorizonProblem& problem, bool snap);

/// Best value of sum_k w_k f_k(t_k) with every t_k on {0, step, ..., budget}
/// and sum t_k <= budget, computed exactly over that grid.
double knapsack_grid_optimum(const std::vector<dss::SigmoidItem>& items, double budget, std::size_t steps);

/// max_j |(q^T A)_j - q_j|
double stationarity_residual(const Matrix& a, const std::vector<double>& q);

/// max_{i,j} |q_i A_ij - q_j A_ji|
double detailed_balance_residual(const Matrix& a, const std::vector<double>& q);

/// True when `successes` out of `trials` lies within `sigmas` standard
/// deviations of trials * p.
bool binomial_within(std::size_t successes, std::size_t trials, double p, double sigmas);

/// Derivative of Phi((mu t + x0 - nu) / (sigma sqrt t)) in t, written out by hand.
double accuracy_upper_slope(double t, double x0, const ddm::DdmParams& params);

}  // namespace cams::validation
