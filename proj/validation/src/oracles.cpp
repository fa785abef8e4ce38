#include "cams/validation/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace cams::validation {

double mc_first_passage_time(double x0, const ddm::DdmParams& params, std::size_t paths, double dt,
                             std::uint64_t seed) {
  const double mu = params.drift_magnitude;
  const double sigma = params.diffusion;
  const double eta = params.free_response_threshold;
  const double sd = sigma * std::sqrt(dt);
  const double bridge_scale = 2.0 / (sigma * sigma * dt);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  double total = 0.0;
  for (std::size_t p = 0; p < paths; ++p) {
    double x = x0;
    double t = 0.0;
    while (true) {
      const double next = x + mu * dt + sd * gauss(rng);
      if (std::abs(next) >= eta) {
        t += 0.5 * dt;
        break;
      }
      // Chance that the continuous path touched a barrier inside the step.
      const double p_up = std::exp(-bridge_scale * (eta - x) * (eta - next));
      const double p_down = std::exp(-bridge_scale * (x + eta) * (next + eta));
      if (unif(rng) < p_up + p_down) {
        t += 0.5 * dt;
        break;
      }
      x = next;
      t += dt;
    }
    total += t;
  }
  return total / static_cast<double>(paths);
}

GridMax dense_grid_max(const std::function<double(double)>& f, double lo, double hi, double step) {
  GridMax best{lo, f(lo)};
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = std::min(hi, lo + static_cast<double>(i) * step);
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  if (hi - (lo + static_cast<double>(n) * step) > 1e-9) {
    const double v = f(hi);
    if (v > best.value) best = {hi, v};
  }
  return best;
}

namespace {

struct Walker {
  const dss::HorizonProblem& problem;
  bool snap;
  std::vector<std::vector<double>> actions;  // per stage
  Enumeration best;
  double best_total = -std::numeric_limits<double>::infinity();

  double project(double n) const {
    const auto& g = problem.grids;
    n = std::min(std::max(1.0, n), g.queue_cap);
    if (!snap) return n;
    const double top = std::round((g.queue_cap - 1.0) / g.queue_step);
    const double idx = std::clamp(std::round((n - 1.0) / g.queue_step), 0.0, top);
    return 1.0 + idx * g.queue_step;
  }

  void visit(std::size_t stage, double n, double total, double first) {
    const std::size_t horizon = static_cast<std::size_t>(problem.horizon);
    if (stage > horizon) {
      ++best.sequences;
      if (best.sequences == 1 || total > best_total + 1e-12 * std::max(1.0, std::abs(best_total))) {
        best_total = total;
        best.first_action = first;
      }
      return;
    }
    for (double t : actions[stage - 1]) {
      const double r = dss::stage_reward(problem, stage, n, t);
      const double next = project(n - 1.0 + problem.arrival_rate * t);
      visit(stage + 1, next, total + r, stage == 1 ? t : first);
    }
  }
};

std::vector<double> grid_up_to(double deadline, double step) {
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double t = static_cast<double>(i) * step;
    if (t > deadline + 1e-9) break;
    out.push_back(std::min(t, deadline));
  }
  if (deadline - out.back() > 1e-9) out.push_back(deadline);
  return out;
}

}  // namespace

Enumeration enumerate_horizon(const dss::HorizonProblem& problem, bool snap) {
  Walker w{problem, snap, {}, {}};
  for (int j = 1; j <= problem.horizon; ++j) {
    const auto pos = static_cast<std::size_t>(j);
    const double deadline =
        pos <= problem.queue.size() ? problem.queue[pos - 1].deadline : problem.expected.deadline;
    w.actions.push_back(grid_up_to(deadline, problem.grids.time_step));
  }
  w.visit(1, static_cast<double>(problem.queue.size()), 0.0, 0.0);
  w.best.value = w.best_total / static_cast<double>(problem.horizon);
  return w.best;
}

double knapsack_grid_optimum(const std::vector<dss::SigmoidItem>& items, double budget, std::size_t steps) {
  const double step = budget / static_cast<double>(steps);
  std::vector<double> best(steps + 1, 0.0);
  for (const auto& item : items) {
    std::vector<double> gain(steps + 1);
    for (std::size_t s = 0; s <= steps; ++s) gain[s] = item.weight * item.utility(static_cast<double>(s) * step);
    std::vector<double> next(steps + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t total = 0; total <= steps; ++total) {
      for (std::size_t s = 0; s <= total; ++s) next[total] = std::max(next[total], best[total - s] + gain[s]);
    }
    best = std::move(next);
  }
  return *std::max_element(best.begin(), best.end());
}

double stationarity_residual(const Matrix& a, const std::vector<double>& q) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += q[i] * a(i, j);
    worst = std::max(worst, std::abs(s - q[j]));
  }
  return worst;
}

double detailed_balance_residual(const Matrix& a, const std::vector<double>& q) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(q[i] * a(i, j) - q[j] * a(j, i)));
  }
  return worst;
}

bool binomial_within(std::size_t successes, std::size_t trials, double p, double sigmas) {
  const double n = static_cast<double>(trials);
  const double sd = std::sqrt(n * p * (1.0 - p));
  return std::abs(static_cast<double>(successes) - n * p) <= sigmas * sd + 1e-12;
}

double accuracy_upper_slope(double t, double x0, const ddm::DdmParams& params) {
  const double mu = params.drift_magnitude;
  const double s = params.diffusion;
  const double z = (mu * t + x0 - params.interrogation_threshold) / (s * std::sqrt(t));
  const double dz = (mu * t - x0 + params.interrogation_threshold) / (2.0 * s * t * std::sqrt(t));
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi) * dz;
}

}  // namespace cams::validation
