#include "cams/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cams/errors.hpp"

namespace cams::dss {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt 5 - 1) / 2

template <typename F>
double golden_maximize(F&& f, double lo, double hi, int iterations = 80) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iterations && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

struct Relaxation {
  double value = 0.0;
  std::vector<double> durations;  // f_dagger(alpha / w_k)
  std::vector<double> fraction;   // x_k in [0, 1]
};

Relaxation solve_relaxation(const std::vector<SigmoidItem>& items, double budget, double alpha) {
  const std::size_t n = items.size();
  Relaxation r;
  r.durations.assign(n, 0.0);
  r.fraction.assign(n, 0.0);
  std::vector<double> gains(n, 0.0);
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(items[k].weight > 0.0)) continue;
    r.durations[k] = sigmoid_pseudo_inverse(items[k], alpha / items[k].weight);
    gains[k] = items[k].weight * items[k].utility(r.durations[k]);
    if (r.durations[k] <= 0.0) {
      // Free items are always taken.
      r.fraction[k] = 1.0;
      r.value += gains[k];
    } else {
      order.push_back(k);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gains[a] / r.durations[a] > gains[b] / r.durations[b];
  });
  double remaining = budget;
  for (std::size_t k : order) {
    if (remaining <= 0.0) break;
    if (r.durations[k] <= remaining) {
      r.fraction[k] = 1.0;
      remaining -= r.durations[k];
      r.value += gains[k];
    } else {
      r.fraction[k] = remaining / r.durations[k];
      r.value += r.fraction[k] * gains[k];
      remaining = 0.0;
    }
  }
  return r;
}

}  // namespace

SigmoidItem make_sigmoid_item(Curve utility, double weight, double horizon) {
  SigmoidItem item;
  item.weight = weight;
  item.utility = utility;
  item.derivative = [f = std::move(utility)](double t) {
    const double h = 1e-5 * std::max(1.0, t);
    const double lo = std::max(0.0, t - h);
    return (f(t + h) - f(lo)) / (t + h - lo);
  };
  constexpr int kScan = 2000;
  int best = 0;
  double best_slope = item.derivative(0.0);
  for (int i = 1; i <= kScan; ++i) {
    const double slope = item.derivative(horizon * i / kScan);
    if (slope > best_slope) {
      best_slope = slope;
      best = i;
    }
  }
  const double lo = horizon * std::max(0, best - 1) / kScan;
  const double hi = horizon * std::min(kScan, best + 1) / kScan;
  const double refined = golden_maximize(item.derivative, lo, hi);
  item.inflection = item.derivative(refined) > best_slope ? refined : horizon * best / kScan;
  return item;
}

double sigmoid_pseudo_inverse(const SigmoidItem& item, double slope) {
  if (!(slope > 0.0)) throw DomainError("sigmoid_pseudo_inverse: slope must be > 0");
  const double peak = item.peak_slope();
  if (slope > peak) return 0.0;
  if (slope == peak) return item.inflection;
  double lo = item.inflection;
  double hi = item.inflection + std::max(1.0, item.inflection);
  for (int i = 0; i < 200 && item.derivative(hi) > slope; ++i) {
    lo = hi;
    hi = item.inflection + 2.0 * (hi - item.inflection);
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (item.derivative(mid) > slope) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double relaxation_value(const std::vector<SigmoidItem>& items, double budget, double alpha) {
  return solve_relaxation(items, budget, alpha).value;
}

KnapsackSolution knapsack_sigmoid(const std::vector<SigmoidItem>& items, double budget) {
  if (budget < 0.0) throw DomainError("knapsack_sigmoid: budget must be >= 0");
  const std::size_t n = items.size();
  KnapsackSolution solution;
  solution.allocations.assign(n, 0.0);
  auto objective = [&] {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += items[k].weight * items[k].utility(solution.allocations[k]);
    return total;
  };
  double alpha_max = 0.0;
  for (const auto& item : items) alpha_max = std::max(alpha_max, item.weight * item.peak_slope());
  if (budget == 0.0 || !(alpha_max > 0.0)) {
    solution.value = objective();
    return solution;
  }

  // Step 1: maximize the relaxation value over alpha in (0, alpha_max].
  constexpr int kStarts = 64;
  std::vector<double> grid(kStarts);
  std::vector<double> values(kStarts);
  for (int i = 0; i < kStarts; ++i) {
    grid[i] = alpha_max * std::pow(10.0, -8.0 + 8.0 * i / (kStarts - 1));
    values[i] = relaxation_value(items, budget, grid[i]);
  }
  auto lp = [&](double alpha) { return relaxation_value(items, budget, alpha); };
  double best_alpha = grid.back();
  double best_value = values.back();
  for (int i = 0; i < kStarts; ++i) {
    const bool left_ok = i == 0 || values[i] >= values[i - 1];
    const bool right_ok = i == kStarts - 1 || values[i] >= values[i + 1];
    if (!(left_ok && right_ok)) continue;
    const double lo = grid[std::max(0, i - 1)];
    const double hi = grid[std::min(kStarts - 1, i + 1)];
    const double alpha = golden_maximize(lp, lo, hi, 60);
    for (double candidate : {grid[i], alpha}) {
      const double v = lp(candidate);
      if (v > best_value) {
        best_value = v;
        best_alpha = candidate;
      }
    }
  }
  solution.alpha = best_alpha;

  // Step 2: items fully taken by the relaxation get f_dagger(alpha / w_k).
  const Relaxation relaxed = solve_relaxation(items, budget, best_alpha);
  double used = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (relaxed.fraction[k] == 1.0 && used + relaxed.durations[k] <= budget) {
      solution.allocations[k] = relaxed.durations[k];
      used += relaxed.durations[k];
    }
  }

  // Step 3: the leftover goes to the unallocated item that gains most from it.
  const double residual = budget - used;
  if (residual > 0.0) {
    std::size_t pick = n;
    double best_gain = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (solution.allocations[k] > 0.0) continue;
      const double gain = items[k].weight * (items[k].utility(residual) - items[k].utility(0.0));
      if (gain > best_gain) {
        best_gain = gain;
        pick = k;
      }
    }
    if (pick < n) solution.allocations[pick] = residual;
  }
  solution.value = objective();
  return solution;
}

std::vector<double> no_deadline_allocation(const routing::RoutingPolicy& routing,
                                           const std::vector<TaskSnapshot>& tasks, double arrival_rate) {
  if (!(arrival_rate > 0.0)) throw DomainError("no_deadline_allocation: arrival rate must be > 0");
  if (routing.q.size() != tasks.size()) throw DomainError("no_deadline_allocation: size mismatch");
  const double budget = 1.0 / arrival_rate;
  std::vector<SigmoidItem> items;
  std::vector<std::size_t> regions;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const double qk = routing.q[k];
    if (!(qk > 0.0)) continue;
    Curve in_resource = [f = tasks[k].performance, qk](double s) { return f(s / qk); };
    items.push_back(make_sigmoid_item(std::move(in_resource), qk * tasks[k].weight, budget));
    regions.push_back(k);
  }
  const KnapsackSolution solution = knapsack_sigmoid(items, budget);
  std::vector<double> durations(tasks.size(), 0.0);
  for (std::size_t i = 0; i < regions.size(); ++i) {
    durations[regions[i]] = solution.allocations[i] / routing.q[regions[i]];
  }
  return durations;
}

}  // namespace cams::dss
