#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cams/routing.hpp"

// Attention allocation for the operator's task queue.
//
// Each queued task carries a frozen accuracy curve f(t), an importance
// weight and a soft deadline expressed as a latency penalty rate. The
// allocation for the head task comes from a certainty-equivalent
// receding-horizon problem: N stages, queue length as the only state,
// future arrivals replaced by their expectation. The problem is solved by
// backward induction on a discretized (queue length, duration) grid.

namespace cams::dss {

using Curve = std::function<double(double)>;

struct TaskSnapshot {
  std::size_t region = 0;
  Curve performance;  // accuracy as a function of allocated duration
  double weight = 1.0;
  double deadline = 40.0;
  double latency_rate = 0.0;
};

/// Certainty-equivalent parameters of a task that has not arrived yet.
struct ExpectedTask {
  Curve performance;  // weight-and-probability weighted mixture of the region curves
  double weight = 1.0;
  double latency_rate = 0.0;
  double deadline = 40.0;  // q-weighted mean deadline, bounds the action grid
};

struct Grids {
  double time_step = 0.5;   // action grid spacing
  double queue_cap = 50.0;  // largest representable queue length
  double queue_step = 0.1;  // state grid spacing for predicted queue lengths

  friend bool operator==(const Grids&, const Grids&) = default;
};

struct HorizonProblem {
  int horizon = 5;
  std::vector<TaskSnapshot> queue;  // head first
  routing::RoutingPolicy routing;
  double arrival_rate = 0.0;
  ExpectedTask expected;
  Grids grids;

  /// Throws DomainError on an empty queue, a nonpositive horizon or bad grids.
  void validate() const;
};

/// w * f'(deadline) by central difference with step time_step / 10. Logs a
/// warning when the deadline precedes the curve's inflection point.
double latency_rate(const TaskSnapshot& task, double time_step);

/// True when f is concave at the deadline (second difference <= 0).
bool deadline_after_inflection(const Curve& performance, double deadline, double step);

/// Mixture f_bar = sum q_k w_k f_k / sum q_k w_k, w_bar = sum q_k w_k and
/// c_bar = sum q_k c_k over one snapshot per region.
ExpectedTask expected_task_params(const routing::RoutingPolicy& routing,
                                  const std::vector<TaskSnapshot>& per_region);

/// Reward of stage `position` (1-based, a task already in the queue) when the
/// predicted queue length at the start of that stage is `queue_length`:
///   w f(t) - c_bar lambda t^2 / 2 - (sum_{i>=position} c_i + (n_bar - n + position - 1) c_bar) t
double reward_realized(const HorizonProblem& problem, std::size_t position, double queue_length, double t);

/// Reward of a predicted stage: w_bar f_bar(t) - c_bar n_bar t - c_bar lambda t^2 / 2
double reward_expected(const HorizonProblem& problem, double queue_length, double t);

/// Reward of stage `position` whichever kind it is.
double stage_reward(const HorizonProblem& problem, std::size_t position, double queue_length, double t);

/// Deadline bounding the action grid at a stage.
double stage_deadline(const HorizonProblem& problem, std::size_t position);

/// Certainty-equivalent queue length after spending t on the current task,
/// max(1, n - 1 + lambda t), capped at the grid's queue_cap.
double next_queue_length(const HorizonProblem& problem, double queue_length, double t);

/// Nearest point of the state grid {1, 1 + dn, ..., queue_cap}.
double snap_queue_length(const HorizonProblem& problem, double queue_length);

/// Actions {0, dt, 2 dt, ...} up to the deadline, with the deadline appended
/// when it is not itself a grid point.
std::vector<double> action_grid(double deadline, double time_step);

struct HorizonSolution {
  double allocation = 0.0;  // optimal first-stage duration
  double value = 0.0;       // (1/N) sum of stage rewards along the optimal plan
  std::size_t state_count = 0;
  std::size_t action_count = 0;
};

/// Backward induction over (stage, snapped queue length). The first stage
/// starts from the exact current queue length; later stages live on the state
/// grid. Ties go to the smallest duration.
HorizonSolution solve_horizon(const HorizonProblem& problem);

/// Head task's deadline when its belief is above `critical_belief`,
/// otherwise the receding-horizon allocation.
double allocate(const HorizonProblem& problem, double head_belief, double critical_belief);

}  // namespace cams::dss
