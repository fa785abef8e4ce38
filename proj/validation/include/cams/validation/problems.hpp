#pragma once

#include <random>
#include <vector>

#include "cams/decision_support.hpp"
#include "cams/knapsack.hpp"
#include "cams/routing.hpp"

// Random and fixed problem instances shared by the acceptance criteria and
// the property checks.

namespace cams::validation {

/// Travel times of the four-region mission used by both case studies.
Matrix case_study_travel();

/// Connected graph on m regions: a random spanning tree plus random extra
/// edges and self-loops. Travel times are zero.
routing::SurveillanceGraph random_connected_graph(std::size_t m, std::mt19937_64& rng);

/// (L(a (t - b)) - L(-a b)) / (1 - L(-a b)) with L the logistic function, so f(0) = 0.
dss::Curve logistic_utility(double steepness, double midpoint);

struct KnapsackInstance {
  std::vector<dss::SigmoidItem> items;
  double budget = 0.0;
};

/// One to four logistic items with random steepness, midpoint and weight.
KnapsackInstance random_knapsack_instance(std::mt19937_64& rng);

/// Expected accuracy of an unfatigued operator with drift mu and prior belief pi.
dss::Curve ddm_expected_accuracy(double mu, double prior);

/// Horizon problem over three regions with random drifts, priors, weights
/// and deadlines, `queued` tasks waiting and horizon N.
dss::HorizonProblem random_horizon_problem(std::mt19937_64& rng, int horizon, std::size_t queued);

/// The first case study: paper travel times, uniform routing, mu = 0.3,
/// sigma = 1, deadline 40, two tasks queued (regions 0 and 2, priors 0.5 and 0.7).
dss::HorizonProblem case_study_horizon_problem(int horizon);

}  // namespace cams::validation
