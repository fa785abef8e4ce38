#include "cams/validation/properties.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <numbers>
#include <random>

#include "cams/ddm.hpp"
#include "cams/decision_support.hpp"
#include "cams/detection.hpp"
#include "cams/human_factors.hpp"
#include "cams/knapsack.hpp"
#include "cams/operator_state.hpp"
#include "cams/routing.hpp"
#include "cams/sim_engine.hpp"
#include "cams/validation/oracles.hpp"
#include "cams/validation/problems.hpp"

namespace cams::validation {

namespace {

// Standard normal CDF by Simpson integration of the density, independent of erfc.
double phi_integral(double x) {
  const int n = 20000;
  const double a = 0.0;
  const double h = (x - a) / n;
  auto pdf = [](double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); };
  double s = pdf(a) + pdf(x);
  for (int i = 1; i < n; ++i) s += pdf(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return 0.5 + s * h / 3.0;
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

class Suite {
 public:
  void check(const std::string& name, const std::function<bool(std::string&)>& body) {
    PropertyResult r;
    r.name = name;
    try {
      r.passed = body(r.detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results_.push_back(std::move(r));
  }

  /// |actual - expected| <= tol, reporting both values.
  void close(const std::string& name, const std::function<double()>& actual, double expected, double tol) {
    check(name, [&](std::string& d) {
      const double a = actual();
      d = "got " + num(a) + ", expected " + num(expected);
      return std::abs(a - expected) <= tol;
    });
  }

  std::vector<PropertyResult> take() { return std::move(results_); }

 private:
  std::vector<PropertyResult> results_;
};

void ddm_checks(Suite& s) {
  ddm::DdmParams p;
  s.close("ddm.initial_evidence.prior_0.8", [&] { return ddm::initial_evidence(0.8, p); }, std::log(4.0) / 0.6, 1e-12);
  s.close("ddm.accuracy_upper.t10", [&] { return ddm::accuracy_upper(10.0, 0.0, p); }, phi_integral(3.0 / std::sqrt(10.0)),
          1e-10);
  s.close("ddm.accuracy_lower.t10", [&] { return ddm::accuracy_lower(10.0, 0.0, p); }, phi_integral(3.0 / std::sqrt(10.0)),
          1e-10);
  s.close("ddm.expected_accuracy.symmetric", [&] { return ddm::expected_accuracy(0.5, 0.8286, 0.8286); }, 0.8286, 1e-15);
  s.check("ddm.free_response.x0_1_eta_3_vs_monte_carlo", [&](std::string& d) {
    ddm::DdmParams fr = p;
    fr.free_response_threshold = 3.0;
    const double formula = ddm::free_response_expected_time(1.0, fr);
    const double mc = mc_first_passage_time(1.0, fr, 100000, 0.01, 11);
    d = "formula " + num(formula) + ", Monte Carlo " + num(mc);
    return std::abs(mc - formula) <= 0.02 * formula;
  });
  s.close("ddm.free_response.limiting_threshold", [&] {
    ddm::DdmParams fr = p;
    fr.free_response_threshold = ddm::bayes_risk_threshold(p, ddm::ThresholdMode::limiting);
    return ddm::free_response_expected_time(0.0, fr);
  }, 10.0 * std::tanh(0.9), 1e-12);
  s.close("ddm.bayes_threshold.limiting", [&] { return ddm::bayes_risk_threshold(p, ddm::ThresholdMode::limiting); }, 3.0,
          1e-15);
  s.check("ddm.bayes_threshold.exact_residual", [&](std::string& d) {
    const double eta = ddm::bayes_risk_threshold(p, ddm::ThresholdMode::exact);
    // Residual written out independently of the library.
    const double a = 2.0 * 0.3 * eta;
    const double g = 40.0 * 2.0 * 0.09 - 4.0 * 0.3 * eta - (std::exp(a) - std::exp(-a));
    d = "eta " + num(eta) + ", residual " + num(g);
    return std::abs(g) < 1e-10 && eta > 0.0 && eta < 3.0;
  });
  s.check("ddm.accuracy.monotone_in_time", [&](std::string& d) {
    double prev = 0.5;
    for (int i = 1; i <= 400; ++i) {
      const double f = ddm::accuracy_upper(0.25 * i, 0.0, p);
      if (f < prev) {
        d = "decrease at t=" + num(0.25 * i);
        return false;
      }
      prev = f;
    }
    return true;
  });
}

void human_factor_checks(Suite& s) {
  hf::SafteParams safte;
  ddm::DdmParams p;
  hf::UtilizationParams u;
  hf::RetentionParams rem;
  s.close("hf.task_effectiveness.peak_hour_rested", [&] { return hf::task_effectiveness(0.0, 18.0, safte); }, 1.07, 1e-12);
  s.check("hf.effective_drift.modified_drift_residual", [&](std::string& d) {
    const double te = 1.07;
    const double mu_eff = hf::effective_drift(p, te);
    const double eta = 0.3 * 40.0 / 4.0;
    const double residual = std::tanh(mu_eff * mu_eff * 40.0 / 4.0) - std::tanh(0.3 * eta) / te;
    d = "mu_eff " + num(mu_eff) + ", residual " + num(residual);
    return std::abs(residual) < 1e-10;
  });
  s.close("hf.effective_drift.rested", [&] { return hf::effective_drift(p, 1.0); }, 0.3, 1e-10);
  s.close("hf.utilization.busy_one_tau", [&] { return hf::utilization_after_task(0.0, 100.0, 0.0, 100.0); },
          1.0 - std::exp(-1.0), 1e-15);
  s.close("hf.motor_time.zero_utilization", [&] { return hf::motor_time(0.0, 1.0, u); }, 45.0, 1e-12);
  s.close("hf.motor_time.vertex_floored", [&] { return hf::motor_time(155.0 / 264.0, 1.0, u); }, 0.0, 0.0);
  s.close("hf.rest_time.u_0.85", [&] { return hf::rest_time(0.85 + 1e-15, u); }, 100.0 * std::log(0.85 / 0.7), 1e-9);
  s.close("hf.rest_time.lands_on_optimum",
          [&] { return hf::utilization_after_task(0.9, 0.0, hf::rest_time(0.9, u), u.sensitivity); }, 0.7, 1e-12);
  s.close("hf.retention.elapsed_1_clamped", [&] { return hf::retention(1.0, rem); }, 1.0, 0.0);
  s.close("hf.retained_belief.rem_0.1", [&] {
    // Elapsed long enough that only the floor term survives.
    return hf::retained_belief(0.8, 1000.0, rem);
  }, 1.0 / (1.0 + std::exp(-0.1 * std::log(4.0))), 1e-12);
  s.check("hf.unified_accuracy.composition", [&](std::string& d) {
    hf::OperatorCondition c{0.7, 1.07, 5.0, 0.6};
    const double got = hf::unified_accuracy(hf::Hypothesis::anomalous, 40.0, c, p, u, rem);
    // Chain the sub-formulas by hand.
    const double s0 = std::tanh(0.09 * 40.0 / 4.0);
    const double mu_eff = std::sqrt(2.0 / 40.0 * std::log((1.07 + s0) / (1.07 - s0)));
    const double wait = std::max(0.0, (54.0 - 155.0 * 0.7 + 132.0 * 0.49 - 9.0) / 1.07);
    const double r = std::min(1.0, 4.6 * std::exp(-50.0 / 1.15) + 1.5 * std::exp(-50.0 / 27.55) + 0.1);
    const double x = std::log(1.5) / (2.0 * mu_eff) * r;
    const double te = 40.0 - wait;
    const double expected = phi_integral((mu_eff * te + x) / std::sqrt(te));
    d = "got " + num(got) + ", composed " + num(expected);
    return std::abs(got - expected) < 1e-9;
  });
  s.check("hf.unified_accuracy.continuous_at_wait", [&](std::string& d) {
    hf::OperatorCondition c{0.7, 1.0, 0.0, 0.5};
    const double wait = hf::motor_time(0.7, 1.0, u);
    const double left = hf::unified_accuracy(hf::Hypothesis::anomalous, wait, c, p, u, rem);
    const double right = hf::unified_accuracy(hf::Hypothesis::anomalous, wait + 1e-10, c, p, u, rem);
    d = "left " + num(left) + ", right " + num(right);
    return std::abs(left - right) < 1e-4;
  });
}

void operator_checks(Suite& s) {
  s.close("op.bayes_update.positive", [] { return op::bayes_update(0.5, 0.8, 0.2); }, 0.8, 1e-15);
  s.close("op.bayes_update.negative", [] { return op::bayes_update(0.8, 0.2, 0.8); }, 0.5, 1e-15);
  s.check("op.process_decision.composition", [](std::string& d) {
    op::OperatorModel model;
    op::OperatorState state = op::OperatorState::unbiased(4, 0.7);
    state.beliefs[2].current = 0.7;
    const auto next = op::process_decision(state, 2, 20.0, 1, 100.0, model);
    const double x0 = std::log(0.7 / 0.3) / 0.6;
    const double f1 = phi_integral((0.3 * 20.0 + x0) / std::sqrt(20.0));
    const double f0 = phi_integral((0.3 * 20.0 - x0) / std::sqrt(20.0));
    const double expected = std::max(0.5, 0.7 * f1 / (0.7 * f1 + 0.3 * (1.0 - f0)));
    d = "got " + num(next.beliefs[2].current) + ", composed " + num(expected);
    bool others = true;
    for (std::size_t k : {0u, 1u, 3u}) others = others && next.beliefs[k] == state.beliefs[k];
    return std::abs(next.beliefs[2].current - expected) < 1e-9 && others;
  });
}

void detection_checks(Suite& s) {
  s.close("detect.loglik.symmetric", [] { return detect::loglik_ratio(1, 0.8, 0.8); }, std::log(4.0), 1e-15);
  s.close("detect.update.accumulates", [] {
    detect::CusumBank bank(1, 5.0);
    bank.update(0, 1.0);
    bank.update(0, std::log(4.0));
    return bank.statistic(0);
  }, 1.0 + std::log(4.0), 1e-15);
}

void routing_checks(Suite& s) {
  s.close("routing.likelihood.lambda_5", [] { return routing::likelihood_routing({5.0, 0.0, 0.0, 0.0}).q[0]; },
          [] {
            const double e = std::exp(5.0) / (1.0 + std::exp(5.0));
            return e / (e + 1.5);
          }(),
          1e-15);
  s.check("routing.expected_cycle_time.case_study", [](std::string& d) {
    const Matrix travel = case_study_travel();
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) sum += travel(i, j);
    }
    const auto g = routing::SurveillanceGraph::complete(travel, std::vector<double>(4, 10.0), std::vector<double>(4, 1.0),
                                                        std::vector<double>(4, 40.0));
    const double c = routing::expected_cycle_time(routing::RoutingPolicy::uniform(4), g);
    d = "matrix sum " + num(sum) + ", cycle " + num(c);
    return std::abs(sum - 250.1842) < 1e-9 && std::abs(c - (250.1842 / 16.0 + 10.0)) < 1e-12;
  });
  s.check("routing.sampling.uniform_frequencies", [](std::string& d) {
    RngStream rng(5, "routing");
    std::vector<std::size_t> counts(4, 0);
    const auto q = routing::RoutingPolicy::uniform(4);
    const std::size_t n = 100000;
    for (std::size_t i = 0; i < n; ++i) ++counts[routing::sample_next_region(q, rng)];
    bool ok = true;
    for (auto c : counts) ok = ok && binomial_within(c, n, 0.25, 3.0);
    d = "counts " + std::to_string(counts[0]) + " " + std::to_string(counts[1]) + " " + std::to_string(counts[2]) + " " +
        std::to_string(counts[3]);
    return ok;
  });
}

void decision_support_checks(Suite& s) {
  s.check("dss.latency_rate.analytic_derivative", [](std::string& d) {
    dss::TaskSnapshot task;
    const ddm::DdmParams p;
    task.performance = [p](double t) { return ddm::accuracy_upper(t, 0.0, p); };
    task.deadline = 40.0;
    const double c = dss::latency_rate(task, 0.5);
    const double analytic = accuracy_upper_slope(40.0, 0.0, p);
    d = "central difference " + num(c) + ", analytic " + num(analytic);
    return std::abs(c - analytic) < 1e-5 * analytic;
  });
  s.check("dss.reward_realized.term_by_term", [](std::string& d) {
    dss::HorizonProblem p = case_study_horizon_problem(5);
    p.queue[0].latency_rate = 0.002;
    p.queue[1].latency_rate = 0.003;
    p.expected.latency_rate = 0.0025;
    const double t = 12.0;
    const double n_bar = 2.4;
    const double got = dss::reward_realized(p, 2, n_bar, t);
    const double linear = 0.003 + (n_bar - 2.0 + 2.0 - 1.0) * 0.0025;
    const double expected = p.queue[1].performance(t) - 0.5 * 0.0025 * p.arrival_rate * t * t - linear * t;
    d = "got " + num(got) + ", by hand " + num(expected);
    return std::abs(got - expected) < 1e-15;
  });
  s.check("dss.reward_expected.term_by_term", [](std::string& d) {
    dss::HorizonProblem p = case_study_horizon_problem(5);
    const double t = 7.5;
    const double got = dss::reward_expected(p, 3.0, t);
    const double c = p.expected.latency_rate;
    const double expected = p.expected.weight * p.expected.performance(t) - c * 3.0 * t - 0.5 * c * p.arrival_rate * t * t;
    d = "got " + num(got) + ", by hand " + num(expected);
    return std::abs(got - expected) < 1e-15;
  });
  s.check("dss.solve_horizon.within_lipschitz_bound_of_unsnapped", [](std::string& d) {
    dss::HorizonProblem p = case_study_horizon_problem(3);
    p.grids.queue_step = 0.5;
    const auto sol = dss::solve_horizon(p);
    const Enumeration exact = enumerate_horizon(p, false);
    // Each snap moves the queue length by at most dn/2; a stage reward has
    // slope c_bar t <= c_bar T in n, and the error carries to later stages.
    const double c = p.expected.latency_rate;
    double bound = 0.0;
    for (int j = 2; j <= p.horizon; ++j) bound += (j - 1) * 0.5 * p.grids.queue_step * c * 40.0;
    bound /= p.horizon;
    const double gap = std::abs(sol.value - exact.value);
    d = "gap " + num(gap) + ", bound " + num(bound);
    return gap <= bound + 1e-12;
  });
  s.check("dss.solve_horizon.nonincreasing_in_penalty", [](std::string& d) {
    dss::HorizonProblem p = case_study_horizon_problem(5);
    double prev = dss::solve_horizon(p).value;
    for (int i = 1; i <= 5; ++i) {
      p.queue[0].latency_rate *= 1.5;
      p.expected.latency_rate *= 1.5;
      const double v = dss::solve_horizon(p).value;
      if (v > prev + 1e-12) {
        d = "value rose from " + num(prev) + " to " + num(v);
        return false;
      }
      prev = v;
    }
    return true;
  });
  s.check("dss.allocate.critical_override", [](std::string& d) {
    dss::HorizonProblem p = case_study_horizon_problem(5);
    const double high = dss::allocate(p, 0.85, 0.8);
    const double boundary = dss::allocate(p, 0.8, 0.8);
    const double solved = dss::solve_horizon(p).allocation;
    d = "belief 0.85 -> " + num(high) + ", belief 0.8 -> " + num(boundary);
    return high == 40.0 && boundary == solved;
  });
  s.check("dss.sigmoid_pseudo_inverse.half_peak_residual", [](std::string& d) {
    auto item = dss::make_sigmoid_item(logistic_utility(1.0, 5.0), 1.0, 20.0);
    const double slope = 0.5 * item.peak_slope();
    const double t = dss::sigmoid_pseudo_inverse(item, slope);
    const double residual = std::abs(item.derivative(t) - slope);
    d = "t " + num(t) + ", residual " + num(residual);
    return residual < 1e-10 && t > item.inflection;
  });
  s.check("dss.knapsack.single_item_matches_grid", [](std::string& d) {
    std::vector<dss::SigmoidItem> items{dss::make_sigmoid_item(logistic_utility(0.8, 6.0), 1.0, 30.0)};
    const auto sol = dss::knapsack_sigmoid(items, 30.0);
    const double opt = knapsack_grid_optimum(items, 30.0, 3000);
    d = "value " + num(sol.value) + ", grid optimum " + num(opt);
    return sol.value >= 0.5 * opt && std::abs(sol.value - opt) < 1e-6;
  });
  s.check("dss.no_deadline.stability_constraint", [](std::string& d) {
    const auto g = routing::SurveillanceGraph::complete(case_study_travel(), std::vector<double>(4, 10.0),
                                                        std::vector<double>(4, 1.0), std::vector<double>(4, 40.0));
    const auto q = routing::RoutingPolicy::uniform(4);
    const double lambda = 1.0 / routing::expected_cycle_time(q, g);
    std::vector<dss::TaskSnapshot> tasks;
    for (std::size_t k = 0; k < 4; ++k) {
      dss::TaskSnapshot t;
      t.region = k;
      t.performance = ddm_expected_accuracy(0.3, 0.5);
      tasks.push_back(t);
    }
    const auto durations = dss::no_deadline_allocation(q, tasks, lambda);
    double used = 0.0;
    for (std::size_t k = 0; k < 4; ++k) used += q.q[k] * durations[k];
    const double budget = 1.0 / lambda;
    d = "sum q t " + num(used) + ", budget " + num(budget);
    return used <= budget + 1e-9 && budget - used < 0.5;
  });
}

void engine_checks(Suite& s) {
  s.check("sim.decision_sampling.binomial", [](std::string& d) {
    RngStream rng(3, "decisions");
    std::size_t ones = 0;
    const std::size_t n = 10000;
    for (std::size_t i = 0; i < n; ++i) ones += sim::simulate_operator_decision(rng, true, 0.97);
    d = std::to_string(ones) + " of " + std::to_string(n);
    return binomial_within(ones, n, 0.97, 3.0);
  });
  s.check("sim.drop_pending.keeps_oldest", [](std::string& d) {
    std::deque<sim::Task> q;
    for (int i = 0; i < 5; ++i) q.push_back({static_cast<std::size_t>(i % 4), 10.0 * i, false});
    sim::drop_pending(q);
    d = "length " + std::to_string(q.size());
    return q.size() == 1 && q.front().enqueued_at == 0.0;
  });
  s.check("sim.no_anomalies.queue_stable", [](std::string& d) {
    sim::Scenario sc;
    sc.graph = routing::SurveillanceGraph::complete(case_study_travel(), std::vector<double>(4, 10.0),
                                                    std::vector<double>(4, 1.0), std::vector<double>(4, 40.0));
    sc.algorithm.cusum_threshold = 1e300;
    sc.duration = 10.0 * 25.6365 * 4.0;
    sc.seed = 9;
    const auto r = sim::run(sc);
    double total = 0.0;
    std::size_t rows = 0;
    std::size_t longest = 0;
    for (const auto& row : r.trace) {
      if (row.event != sim::EventKind::enqueue) continue;
      total += static_cast<double>(row.queue_length);
      longest = std::max(longest, row.queue_length);
      ++rows;
    }
    const double mean = total / static_cast<double>(rows);
    d = "detections " + std::to_string(r.detections.size()) + ", mean queue " + num(mean) + ", longest " +
        std::to_string(longest);
    return r.detections.empty() && mean < 5.0;
  });
}

}  // namespace

std::vector<PropertyResult> run_properties() {
  Suite s;
  ddm_checks(s);
  human_factor_checks(s);
  operator_checks(s);
  detection_checks(s);
  routing_checks(s);
  decision_support_checks(s);
  engine_checks(s);
  return s.take();
}

}  // namespace cams::validation
