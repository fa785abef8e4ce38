#include "cams/decision_support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cams/errors.hpp"
#include "cams/logging.hpp"

namespace cams::dss {

namespace {

std::size_t state_count(const Grids& grids) {
  return static_cast<std::size_t>(std::floor((grids.queue_cap - 1.0) / grids.queue_step + 0.5)) + 1;
}

double grid_point(const Grids& grids, std::size_t index) {
  return 1.0 + static_cast<double>(index) * grids.queue_step;
}

std::size_t snap_index(const Grids& grids, double queue_length) {
  const double raw = std::round((queue_length - 1.0) / grids.queue_step);
  const double top = static_cast<double>(state_count(grids) - 1);
  return static_cast<std::size_t>(std::clamp(raw, 0.0, top));
}

}  // namespace

void HorizonProblem::validate() const {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  if (queue.empty()) throw DomainError("solve_horizon: empty queue");
  if (!(grids.time_step > 0.0)) throw DomainError("time_step must be > 0");
  if (!(grids.queue_step > 0.0)) throw DomainError("queue_step must be > 0");
  if (grids.queue_cap < static_cast<double>(queue.size())) {
    throw DomainError("queue_cap is below the current queue length");
  }
  for (const auto& task : queue) {
    if (!(task.deadline > 0.0)) throw DomainError("task deadline must be > 0");
  }
}

double latency_rate(const TaskSnapshot& task, double time_step) {
  const double h = time_step / 10.0;
  const double d = task.deadline;
  if (!deadline_after_inflection(task.performance, d, h)) {
    logger().warn("region {}: deadline {} precedes the inflection point of its performance curve",
                  task.region, d);
  }
  return task.weight * (task.performance(d + h) - task.performance(d - h)) / (2.0 * h);
}

bool deadline_after_inflection(const Curve& performance, double deadline, double step) {
  return performance(deadline + step) - 2.0 * performance(deadline) + performance(deadline - step) <= 0.0;
}

ExpectedTask expected_task_params(const routing::RoutingPolicy& routing,
                                  const std::vector<TaskSnapshot>& per_region) {
  if (routing.q.size() != per_region.size()) {
    throw DomainError("expected_task_params: routing and region counts differ");
  }
  ExpectedTask expected;
  double weight = 0.0;
  double rate = 0.0;
  double deadline = 0.0;
  std::vector<double> mix;
  std::vector<Curve> curves;
  for (std::size_t k = 0; k < per_region.size(); ++k) {
    const double qk = routing.q[k];
    weight += qk * per_region[k].weight;
    rate += qk * per_region[k].latency_rate;
    deadline += qk * per_region[k].deadline;
    if (qk > 0.0) {
      mix.push_back(qk * per_region[k].weight);
      curves.push_back(per_region[k].performance);
    }
  }
  expected.weight = weight;
  expected.latency_rate = rate;
  expected.deadline = deadline;
  expected.performance = [mix = std::move(mix), curves = std::move(curves), weight](double t) {
    double total = 0.0;
    for (std::size_t i = 0; i < mix.size(); ++i) total += mix[i] * curves[i](t);
    return total / weight;
  };
  return expected;
}

double reward_realized(const HorizonProblem& problem, std::size_t position, double queue_length, double t) {
  const std::size_t n = problem.queue.size();
  if (position < 1 || position > n) throw DomainError("reward_realized: position outside the queue");
  const TaskSnapshot& task = problem.queue[position - 1];
  if (t > task.deadline) {
    logger().warn("reward_realized: duration {} clamped to deadline {}", t, task.deadline);
    t = task.deadline;
  }
  const double c_bar = problem.expected.latency_rate;
  double waiting = 0.0;
  for (std::size_t i = position; i <= n; ++i) waiting += problem.queue[i - 1].latency_rate;
  const double predicted_arrivals = queue_length - static_cast<double>(n) + static_cast<double>(position) - 1.0;
  waiting += predicted_arrivals * c_bar;
  return task.weight * task.performance(t) - 0.5 * c_bar * problem.arrival_rate * t * t - waiting * t;
}

double reward_expected(const HorizonProblem& problem, double queue_length, double t) {
  const ExpectedTask& e = problem.expected;
  return e.weight * e.performance(t) - e.latency_rate * queue_length * t -
         0.5 * e.latency_rate * problem.arrival_rate * t * t;
}

double stage_reward(const HorizonProblem& problem, std::size_t position, double queue_length, double t) {
  if (position <= problem.queue.size()) return reward_realized(problem, position, queue_length, t);
  return reward_expected(problem, queue_length, t);
}

double stage_deadline(const HorizonProblem& problem, std::size_t position) {
  if (position <= problem.queue.size()) return problem.queue[position - 1].deadline;
  return problem.expected.deadline;
}

double next_queue_length(const HorizonProblem& problem, double queue_length, double t) {
  const double next = std::max(1.0, queue_length - 1.0 + problem.arrival_rate * t);
  return std::min(next, problem.grids.queue_cap);
}

double snap_queue_length(const HorizonProblem& problem, double queue_length) {
  return grid_point(problem.grids, snap_index(problem.grids, queue_length));
}

std::vector<double> action_grid(double deadline, double time_step) {
  std::vector<double> actions;
  const auto steps = static_cast<std::size_t>(std::floor(deadline / time_step + 1e-9));
  actions.reserve(steps + 2);
  for (std::size_t i = 0; i <= steps; ++i) actions.push_back(std::min(deadline, static_cast<double>(i) * time_step));
  if (deadline - actions.back() > 1e-9 * std::max(1.0, deadline)) actions.push_back(deadline);
  return actions;
}

HorizonSolution solve_horizon(const HorizonProblem& problem) {
  problem.validate();
  const Grids& grids = problem.grids;
  const std::size_t n_states = state_count(grids);
  const auto horizon = static_cast<std::size_t>(problem.horizon);
  const double c_bar = problem.expected.latency_rate;

  std::vector<double> value_next(n_states, 0.0);
  std::vector<double> value(n_states, 0.0);
  std::size_t max_actions = 0;

  // Rewards are affine in the queue length with slope -c_bar t, so each stage
  // evaluates the task curve once per action.
  for (std::size_t j = horizon; j >= 2; --j) {
    const std::vector<double> actions = action_grid(stage_deadline(problem, j), grids.time_step);
    max_actions = std::max(max_actions, actions.size());
    std::vector<double> intercept(actions.size());
    for (std::size_t a = 0; a < actions.size(); ++a) intercept[a] = stage_reward(problem, j, 0.0, actions[a]);
    for (std::size_t s = 0; s < n_states; ++s) {
      const double n = grid_point(grids, s);
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < actions.size(); ++a) {
        const double t = actions[a];
        const double candidate = intercept[a] - c_bar * t * n +
                                 value_next[snap_index(grids, next_queue_length(problem, n, t))];
        if (candidate > best) best = candidate;
      }
      value[s] = best;
    }
    std::swap(value, value_next);
  }

  const double n0 = static_cast<double>(problem.queue.size());
  const std::vector<double> actions = action_grid(stage_deadline(problem, 1), grids.time_step);
  max_actions = std::max(max_actions, actions.size());
  HorizonSolution solution;
  double best = -std::numeric_limits<double>::infinity();
  for (double t : actions) {
    double candidate = stage_reward(problem, 1, n0, t);
    if (horizon >= 2) candidate += value_next[snap_index(grids, next_queue_length(problem, n0, t))];
    if (candidate > best) {
      best = candidate;
      solution.allocation = t;
    }
  }
  solution.value = best / static_cast<double>(horizon);
  solution.state_count = n_states;
  solution.action_count = max_actions;
  return solution;
}

double allocate(const HorizonProblem& problem, double head_belief, double critical_belief) {
  if (problem.queue.empty()) throw DomainError("allocate: empty queue");
  if (head_belief > critical_belief) return problem.queue.front().deadline;
  return solve_horizon(problem).allocation;
}

}  // namespace cams::dss
