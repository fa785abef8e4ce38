#include "cams/validation/problems.hpp"

#include <cmath>

#include "cams/operator_state.hpp"

namespace cams::validation {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

dss::TaskSnapshot snapshot(std::size_t region, dss::Curve f, double weight, double deadline, double dt) {
  dss::TaskSnapshot s;
  s.region = region;
  s.performance = std::move(f);
  s.weight = weight;
  s.deadline = deadline;
  s.latency_rate = dss::latency_rate(s, dt);
  return s;
}

}  // namespace

Matrix case_study_travel() {
  const double d[4][4] = {{0, 22.1422, 34.4786, 8.9541},
                          {22.1422, 0, 19.3171, 14.6245},
                          {34.4786, 19.3171, 0, 25.5756},
                          {8.9541, 14.6245, 25.5756, 0}};
  Matrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = d[i][j];
  }
  return m;
}

routing::SurveillanceGraph random_connected_graph(std::size_t m, std::mt19937_64& rng) {
  routing::SurveillanceGraph g;
  g.region_count = m;
  g.adjacency = Matrix(m, m, 0.0);
  g.travel = Matrix(m, m, 0.0);
  g.collection.assign(m, 1.0);
  g.weights.assign(m, 1.0);
  g.deadlines.assign(m, 1.0);
  for (std::size_t i = 1; i < m; ++i) {
    const auto parent = static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(i)));
    g.adjacency(i, parent) = g.adjacency(parent, i) = 1.0;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      if (uniform(rng, 0.0, 1.0) < 0.3) g.adjacency(i, j) = g.adjacency(j, i) = 1.0;
    }
  }
  return g;
}

dss::Curve logistic_utility(double steepness, double midpoint) {
  const double base = 1.0 / (1.0 + std::exp(steepness * midpoint));
  return [steepness, midpoint, base](double t) {
    const double l = 1.0 / (1.0 + std::exp(-steepness * (t - midpoint)));
    return (l - base) / (1.0 - base);
  };
}

KnapsackInstance random_knapsack_instance(std::mt19937_64& rng) {
  KnapsackInstance inst;
  const int n = 1 + static_cast<int>(uniform(rng, 0.0, 4.0));
  inst.budget = uniform(rng, 1.0, 30.0);
  for (int k = 0; k < n; ++k) {
    const double a = uniform(rng, 0.3, 2.0);
    const double b = uniform(rng, 1.0, 12.0);
    const double w = uniform(rng, 0.5, 2.0);
    inst.items.push_back(dss::make_sigmoid_item(logistic_utility(a, b), w, 40.0));
  }
  return inst;
}

dss::Curve ddm_expected_accuracy(double mu, double prior) {
  op::PerformanceCurve c;
  c.ddm.drift_magnitude = mu;
  c.prior = prior;
  c.x_init = ddm::initial_evidence(prior, c.ddm);
  return [c](double t) { return c.expected(t); };
}

dss::HorizonProblem random_horizon_problem(std::mt19937_64& rng, int horizon, std::size_t queued) {
  dss::HorizonProblem p;
  p.horizon = horizon;
  const std::size_t m = 3;
  std::vector<dss::TaskSnapshot> regions;
  for (std::size_t k = 0; k < m; ++k) {
    const double mu = uniform(rng, 0.15, 0.5);
    const double prior = uniform(rng, 0.5, 0.79);
    regions.push_back(snapshot(k, ddm_expected_accuracy(mu, prior), uniform(rng, 0.5, 2.0), uniform(rng, 6.0, 12.0),
                               p.grids.time_step));
  }
  std::vector<double> q(m);
  double total = 0.0;
  for (auto& x : q) total += (x = uniform(rng, 0.1, 1.0));
  for (auto& x : q) x /= total;
  p.routing.q = q;
  p.arrival_rate = uniform(rng, 1.0 / 40.0, 1.0 / 10.0);
  p.expected = dss::expected_task_params(p.routing, regions);
  for (std::size_t i = 0; i < queued; ++i) {
    p.queue.push_back(regions[static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(m)))]);
  }
  return p;
}

dss::HorizonProblem case_study_horizon_problem(int horizon) {
  dss::HorizonProblem p;
  p.horizon = horizon;
  routing::SurveillanceGraph g = routing::SurveillanceGraph::complete(case_study_travel(), std::vector<double>(4, 10.0),
                                                                      std::vector<double>(4, 1.0),
                                                                      std::vector<double>(4, 40.0));
  p.routing = routing::RoutingPolicy::uniform(4);
  p.arrival_rate = 1.0 / routing::expected_cycle_time(p.routing, g);
  std::vector<dss::TaskSnapshot> regions;
  const double priors[4] = {0.5, 0.5, 0.7, 0.5};
  for (std::size_t k = 0; k < 4; ++k) {
    regions.push_back(snapshot(k, ddm_expected_accuracy(0.3, priors[k]), 1.0, 40.0, p.grids.time_step));
  }
  p.expected = dss::expected_task_params(p.routing, regions);
  p.queue = {regions[0], regions[2]};
  return p;
}

}  // namespace cams::validation
