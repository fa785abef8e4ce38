#include "cams/routing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cams/errors.hpp"

namespace cams::routing {

SurveillanceGraph SurveillanceGraph::complete(Matrix travel, std::vector<double> collection,
                                              std::vector<double> weights, std::vector<double> deadlines) {
  SurveillanceGraph g;
  g.region_count = travel.rows();
  g.adjacency = Matrix(g.region_count, g.region_count, 1.0);
  g.travel = std::move(travel);
  g.collection = std::move(collection);
  g.weights = std::move(weights);
  g.deadlines = std::move(deadlines);
  return g;
}

std::size_t SurveillanceGraph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t j = 0; j < region_count; ++j) d += has_edge(i, j) ? 1 : 0;
  return d;
}

bool SurveillanceGraph::connected() const {
  if (region_count == 0) return false;
  std::vector<bool> seen(region_count, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < region_count; ++j) {
      if (!seen[j] && has_edge(i, j)) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

RoutingPolicy RoutingPolicy::uniform(std::size_t regions) {
  return RoutingPolicy{std::vector<double>(regions, 1.0 / static_cast<double>(regions))};
}

void RoutingPolicy::validate() const {
  double sum = 0.0;
  for (double p : q) {
    if (!(p >= 0.0)) throw DomainError("routing policy has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("routing policy does not sum to 1");
}

Matrix metropolis_hastings(const SurveillanceGraph& graph, const std::vector<double>& target) {
  const std::size_t m = graph.region_count;
  if (target.size() != m) throw DomainError("metropolis_hastings: target size mismatch");
  for (double p : target) {
    if (!(p > 0.0)) throw DomainError("metropolis_hastings: target entries must be > 0");
  }
  if (!graph.connected()) throw DomainError("metropolis_hastings: graph is not connected");

  Matrix a(m, m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double di = static_cast<double>(graph.degree(i));
    double off = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || !graph.has_edge(i, j)) continue;
      const double dj = static_cast<double>(graph.degree(j));
      a(i, j) = std::min(1.0 / di, target[j] / (target[i] * dj));
      off += a(i, j);
    }
    a(i, i) = 1.0 - off;
  }
  return a;
}

RoutingPolicy likelihood_routing(const std::vector<double>& statistics) {
  RoutingPolicy policy;
  policy.q.reserve(statistics.size());
  for (double lambda : statistics) {
    // e^L / (1 + e^L) written to stay finite for large L.
    policy.q.push_back(1.0 / (1.0 + std::exp(-lambda)));
  }
  const double total = std::accumulate(policy.q.begin(), policy.q.end(), 0.0);
  for (double& p : policy.q) p /= total;
  return policy;
}

RoutingPolicy likelihood_routing(const detect::CusumBank& bank) {
  return likelihood_routing(bank.statistics());
}

double expected_cycle_time(const RoutingPolicy& policy, const SurveillanceGraph& graph) {
  const auto& q = policy.q;
  double travel = 0.0;
  double collect = 0.0;
  for (std::size_t i = 0; i < graph.region_count; ++i) {
    for (std::size_t j = 0; j < graph.region_count; ++j) travel += q[i] * graph.travel(i, j) * q[j];
    collect += q[i] * graph.collection[i];
  }
  return travel + collect;
}

std::size_t sample_index(const std::vector<double>& probabilities, RngStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] <= 0.0) continue;
    last_positive = k;
    cumulative += probabilities[k];
    if (u < cumulative) return k;
  }
  // Rounding left the cumulative sum just below u.
  return last_positive;
}

}  // namespace cams::routing
