#pragma once

#include <cstddef>
#include <vector>

#include "cams/detection.hpp"
#include "cams/matrix.hpp"
#include "cams/rng.hpp"

namespace cams::routing {

struct SurveillanceGraph {
  std::size_t region_count = 0;
  Matrix adjacency;  // 1.0 where an edge exists; symmetric; diagonal marks self-loops
  Matrix travel;     // symmetric, zero diagonal
  std::vector<double> collection;
  std::vector<double> weights;
  std::vector<double> deadlines;

  /// Complete graph with self-loops over `travel`.
  static SurveillanceGraph complete(Matrix travel, std::vector<double> collection,
                                    std::vector<double> weights, std::vector<double> deadlines);

  bool has_edge(std::size_t i, std::size_t j) const { return adjacency(i, j) != 0.0; }
  /// Regions reachable from i in one move, counting i itself when it has a self-loop.
  std::size_t degree(std::size_t i) const;
  bool connected() const;

  friend bool operator==(const SurveillanceGraph&, const SurveillanceGraph&) = default;
};

/// Probability vector over regions.
struct RoutingPolicy {
  std::vector<double> q;

  static RoutingPolicy uniform(std::size_t regions);
  /// Throws DomainError unless entries are nonnegative and sum to 1 within 1e-12.
  void validate() const;

  friend bool operator==(const RoutingPolicy&, const RoutingPolicy&) = default;
};

/// Metropolis-Hastings chain on the graph with stationary distribution
/// `target`. Off-diagonal entries are min(1/d_i, q_j / (q_i d_j)) on edges
/// and 0 elsewhere; the diagonal takes the remaining mass of each row.
Matrix metropolis_hastings(const SurveillanceGraph& graph, const std::vector<double>& target);

/// q_k proportional to logistic(Lambda_k), so every region keeps a positive probability.
RoutingPolicy likelihood_routing(const detect::CusumBank& bank);
RoutingPolicy likelihood_routing(const std::vector<double>& statistics);

/// Expected travel-plus-collection time between consecutive visits,
/// q' D q + q' T. The task arrival rate is its reciprocal.
double expected_cycle_time(const RoutingPolicy& policy, const SurveillanceGraph& graph);

/// Inverse-CDF draw of a region index from a probability vector.
std::size_t sample_index(const std::vector<double>& probabilities, RngStream& rng);

inline std::size_t sample_next_region(const RoutingPolicy& policy, RngStream& rng) {
  return sample_index(policy.q, rng);
}

}  // namespace cams::routing
