#include "cams/validation/acceptance.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "cams/detection.hpp"
#include "cams/knapsack.hpp"
#include "cams/operator_state.hpp"
#include "cams/routing.hpp"
#include "cams/scenario_io.hpp"
#include "cams/sim_engine.hpp"
#include "cams/trace_csv.hpp"
#include "cams/validation/oracles.hpp"
#include "cams/validation/problems.hpp"

namespace cams::validation {

namespace {

using Clock = std::chrono::steady_clock;

// Traces collected by the case-study criteria for the belief audit.
struct Audit {
  std::size_t rows = 0;
  std::size_t belief_violations = 0;
  std::size_t statistic_violations = 0;
  std::size_t routing_violations = 0;

  void add(const std::vector<sim::TraceRecord>& trace) {
    for (const auto& r : trace) {
      ++rows;
      for (const auto* v : {&r.beliefs, &r.retained}) {
        for (double b : *v) {
          if (!(b >= op::kBeliefFloor && b <= op::kBeliefCap)) ++belief_violations;
        }
      }
      for (double l : r.statistics) {
        if (!(l >= 0.0)) ++statistic_violations;
      }
      double sum = 0.0;
      for (double q : r.routing) sum += q;
      if (!(std::abs(sum - 1.0) <= 1e-12)) ++routing_violations;
    }
  }
};

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

CriterionResult criterion_metropolis() {
  CriterionResult r{1, "Metropolis-Hastings correctness", false, "", 0.0, 1.0};
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst_stationary = 0.0;
  double worst_balance = 0.0;
  double worst_row = 0.0;
  bool negative = false;
  for (int g = 0; g < 50; ++g) {
    const std::size_t m = 2 + static_cast<std::size_t>(unif(rng) * 7.0);  // 2..8
    routing::SurveillanceGraph graph = random_connected_graph(m, rng);
    std::vector<double> q(m);
    double total = 0.0;
    for (auto& x : q) total += (x = 0.05 + unif(rng));
    for (auto& x : q) x /= total;
    const Matrix a = routing::metropolis_hastings(graph, q);
    worst_stationary = std::max(worst_stationary, stationarity_residual(a, q));
    worst_balance = std::max(worst_balance, detailed_balance_residual(a, q));
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        row += a(i, j);
        negative = negative || a(i, j) < 0.0;
      }
      worst_row = std::max(worst_row, std::abs(row - 1.0));
    }
  }
  r.passed = worst_stationary < 1e-10 && worst_balance < 1e-12 && worst_row < 1e-12 && !negative;
  r.detail = "50 graphs, stationarity " + fixed(worst_stationary) + " (< 1e-10), detailed balance " +
             fixed(worst_balance) + " (< 1e-12), row sums " + fixed(worst_row);
  return r;
}

CriterionResult criterion_ddm() {
  CriterionResult r{2, "DDM formula suite", true, "", 0.0, 30.0};
  std::ostringstream detail;
  ddm::DdmParams p;
  double sym = 0.0;
  for (double t : {0.1, 1.0, 5.0, 20.0, 40.0, 200.0}) {
    sym = std::max(sym, std::abs(ddm::accuracy_upper(t, 0.0, p) - ddm::accuracy_lower(t, 0.0, p)));
  }
  const bool sym_ok = sym <= 1e-12;
  detail << "symmetry " << fixed(sym) << (sym_ok ? "" : " FAIL");

  const double late_upper = 1.0 - ddm::accuracy_upper(1e6, 0.0, p);
  const double late_lower = 1.0 - ddm::accuracy_lower(1e6, 0.0, p);
  const double early = std::abs(ddm::accuracy_upper(1e-12, 0.0, p) - 0.5);
  const double biased_early = 1.0 - ddm::accuracy_upper(1e-12, 1.0, p);
  const bool asym_ok = late_upper < 1e-12 && late_lower < 1e-12 && early < 1e-6 && biased_early < 1e-12;
  detail << "; asymptotes " << (asym_ok ? "ok" : "FAIL");

  ddm::DdmParams fr = p;
  fr.free_response_threshold = 2.0;
  bool mc_ok = true;
  for (double x0 : {0.0, 1.0}) {
    const double formula = ddm::free_response_expected_time(x0, fr);
    const double mc = mc_first_passage_time(x0, fr, 100000, 0.01, 7 + static_cast<std::uint64_t>(x0));
    const double rel = std::abs(mc - formula) / formula;
    mc_ok = mc_ok && rel < 0.02;
    detail << "; x0=" << x0 << " formula " << fixed(formula, 5) << " vs MC " << fixed(mc, 5) << " ("
           << fixed(100.0 * rel, 2) << "%)";
  }
  r.passed = sym_ok && asym_ok && mc_ok;
  r.detail = detail.str();
  return r;
}

CriterionResult criterion_cusum() {
  CriterionResult r{3, "CUSUM operating characteristic", false, "", 0.0, 10.0};
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double threshold = 5.0;
  bool never_negative = true;
  auto run_until_alarm = [&](double p_one) {
    detect::CusumBank bank(1, threshold);
    for (std::size_t step = 1;; ++step) {
      const int dec = unif(rng) < p_one ? 1 : 0;
      const bool alarm = bank.update(0, detect::loglik_ratio(dec, 0.8, 0.8));
      never_negative = never_negative && bank.statistic(0) >= 0.0;
      if (alarm) return static_cast<double>(step);
    }
  };
  double delay = 0.0;
  double between = 0.0;
  const int reps = 1000;
  for (int i = 0; i < reps; ++i) {
    between += run_until_alarm(0.2);
    delay += run_until_alarm(0.8);
  }
  delay /= reps;
  between /= reps;

  bool zero_ignored = true;
  detect::CusumBank bank(3, threshold);
  bank.update(1, 2.0);
  for (int i = 0; i < 100; ++i) {
    const auto before = bank.statistics();
    const bool alarm = bank.observe(static_cast<std::size_t>(i % 3), 0.0, i % 2, 0.9, 0.9);
    zero_ignored = zero_ignored && !alarm && bank.statistics() == before;
  }
  r.passed = delay <= 0.1 * between && never_negative && zero_ignored;
  r.detail = "mean delay " + fixed(delay, 4) + " steps, mean time between false alarms " + fixed(between, 5) +
             " steps (ratio " + fixed(delay / between, 3) + ", need <= 0.1); statistics nonnegative " +
             (never_negative ? "yes" : "no") + "; zero allocations ignored " + (zero_ignored ? "yes" : "no");
  return r;
}

CriterionResult criterion_knapsack() {
  CriterionResult r{4, "Sigmoid knapsack 2-factor guarantee", false, "", 0.0, 30.0};
  std::mt19937_64 rng(404);
  double worst_ratio = 1e9;
  double worst_overshoot = -1e9;
  std::size_t failures = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const KnapsackInstance instance = random_knapsack_instance(rng);
    const auto solution = dss::knapsack_sigmoid(instance.items, instance.budget);
    const double optimum = knapsack_grid_optimum(instance.items, instance.budget, 200);
    double used = 0.0;
    for (double t : solution.allocations) used += t;
    const double ratio = optimum > 0.0 ? solution.value / optimum : 1.0;
    worst_ratio = std::min(worst_ratio, ratio);
    worst_overshoot = std::max(worst_overshoot, used - instance.budget);
    if (ratio < 0.5 || used > instance.budget + 1e-9) ++failures;
  }
  r.passed = failures == 0;
  r.detail = "100 instances, worst value/optimum " + fixed(worst_ratio, 4) + " (need >= 0.5), largest budget excess " +
             fixed(worst_overshoot) + " (need <= 1e-9)";
  return r;
}

CriterionResult criterion_horizon() {
  CriterionResult r{5, "Receding-horizon DP", false, "", 0.0, 60.0};
  std::ostringstream detail;
  std::mt19937_64 rng(505);

  // N = 1 against a dense grid ten times finer.
  std::size_t n1_fail = 0;
  double n1_worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    dss::HorizonProblem problem = random_horizon_problem(rng, 1, 1);
    const auto sol = dss::solve_horizon(problem);
    const double n0 = static_cast<double>(problem.queue.size());
    const GridMax dense = dense_grid_max([&](double t) { return dss::stage_reward(problem, 1, n0, t); }, 0.0,
                                         problem.queue.front().deadline, problem.grids.time_step / 10.0);
    const double gap = std::abs(sol.allocation - dense.argmax);
    n1_worst = std::max(n1_worst, gap);
    if (gap > problem.grids.time_step + 1e-9) ++n1_fail;
  }
  detail << "N=1: worst argmax gap " << fixed(n1_worst) << " (step 0.5), " << n1_fail << " misses";

  // N = 3 against exhaustive enumeration on the same grids.
  std::size_t n3_fail = 0;
  double n3_worst = 0.0;
  std::size_t sequences = 0;
  for (int i = 0; i < 10; ++i) {
    dss::HorizonProblem problem = i == 0 ? case_study_horizon_problem(3) : random_horizon_problem(rng, 3, 2);
    const auto sol = dss::solve_horizon(problem);
    const Enumeration e = enumerate_horizon(problem, true);
    sequences += e.sequences;
    const double diff = std::abs(sol.value - e.value);
    n3_worst = std::max(n3_worst, diff);
    if (diff > 1e-9 || sol.allocation != e.first_action) ++n3_fail;
  }
  detail << "; N=3: " << sequences << " sequences enumerated, worst value gap " << fixed(n3_worst) << ", "
         << n3_fail << " mismatches";

  // Refinement of the duration grid. The grids are nested, so the value can
  // only rise, and a halving can leave it unchanged when a coarse point is
  // already optimal. Convergence is judged on the envelope: the largest change
  // among the finer halvings must be below the largest among the coarser ones.
  const double steps[] = {4.0, 2.0, 1.0, 0.5, 0.25, 0.125, 0.0625};
  std::vector<double> values;
  for (double dt : steps) {
    dss::HorizonProblem problem = case_study_horizon_problem(5);
    problem.grids.time_step = dt;
    values.push_back(dss::solve_horizon(problem).value);
  }
  std::vector<double> changes;
  bool nondecreasing = true;
  detail << "; refinement changes";
  for (std::size_t i = 1; i < values.size(); ++i) {
    changes.push_back(std::abs(values[i] - values[i - 1]));
    nondecreasing = nondecreasing && values[i] >= values[i - 1] - 1e-12;
    detail << ' ' << fixed(changes.back());
  }
  const auto half = changes.begin() + static_cast<std::ptrdiff_t>(changes.size() / 2);
  const double coarse = *std::max_element(changes.begin(), half);
  const double fine = *std::max_element(half, changes.end());
  const bool shrinking = nondecreasing && fine < coarse;
  detail << " (coarse max " << fixed(coarse) << ", fine max " << fixed(fine)
         << (nondecreasing ? ", values nondecreasing)" : ", values decreased)");
  r.passed = n1_fail == 0 && n3_fail == 0 && shrinking;
  r.detail = detail.str();
  return r;
}

struct CaseRuns {
  std::vector<sim::RunResult> results;
  sim::Scenario scenario;
};

CaseRuns run_case(const std::filesystem::path& file, std::size_t seeds) {
  CaseRuns runs;
  runs.scenario = io::load_scenario(file);
  for (std::size_t s = 1; s <= seeds; ++s) {
    sim::Scenario copy = runs.scenario;
    copy.seed = s;
    runs.results.push_back(sim::run(copy));
  }
  return runs;
}

CriterionResult criterion_case1(const AcceptanceConfig& config, Audit& audit) {
  CriterionResult r{6, "Case study 1 reproduction", false, "", 0.0, 120.0};
  const CaseRuns runs = run_case(config.scenario_dir / "case1.scn", config.seeds);
  std::size_t in_order = 0;
  std::size_t all_four = 0;
  std::size_t detections = 0;
  std::size_t stat_fail = 0;
  std::size_t drop_fail = 0;
  std::size_t queue_fail = 0;
  for (const auto& result : runs.results) {
    audit.add(result.trace);
    in_order += result.all_detected_in_order(runs.scenario) ? 1 : 0;
    std::size_t found = 0;
    for (std::size_t a = 0; a < runs.scenario.anomalies.size(); ++a) {
      for (const auto& d : result.detections) found += (d.anomaly == a) ? 1 : 0;
    }
    all_four += found == runs.scenario.anomalies.size() ? 1 : 0;

    const auto& trace = result.trace;
    const std::vector<double>* last_route = nullptr;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const auto& row = trace[i];
      if (row.event == sim::EventKind::route) last_route = &row.routing;
      if (row.event != sim::EventKind::detect) continue;
      ++detections;
      const std::size_t k = *row.region;
      if (row.statistics[k] != 0.0) ++stat_fail;
      if (row.queue_length > 1) ++queue_fail;
      const std::vector<double>* next_route = nullptr;
      for (std::size_t j = i + 1; j < trace.size(); ++j) {
        if (trace[j].event == sim::EventKind::route) {
          next_route = &trace[j].routing;
          break;
        }
      }
      if (!last_route || !next_route || !((*next_route)[k] < (*last_route)[k])) ++drop_fail;
    }
  }
  const std::size_t n = runs.results.size();
  const bool order_ok = 10 * in_order >= 9 * n;
  r.passed = order_ok && stat_fail == 0 && drop_fail == 0 && queue_fail == 0;
  r.detail = "all four detected in onset order in " + std::to_string(in_order) + "/" + std::to_string(n) +
             " runs (need >= 90%); all four detected in any order " + std::to_string(all_four) + "/" +
             std::to_string(n) + "; over " + std::to_string(detections) + " detections: Lambda not reset " +
             std::to_string(stat_fail) + ", routing probability not dropped " + std::to_string(drop_fail) +
             ", queue above one " + std::to_string(queue_fail);
  return r;
}

CriterionResult criterion_case2(const AcceptanceConfig& config, Audit& audit) {
  CriterionResult r{7, "Case study 2 reproduction", false, "", 0.0, 180.0};
  const CaseRuns runs = run_case(config.scenario_dir / "case2.scn", config.seeds);
  const auto& u = runs.scenario.human_factors.utilization;
  std::size_t all_four = 0;
  std::size_t util_fail = 0;
  std::size_t rest_events = 0;
  std::size_t rest_fail = 0;
  std::size_t retention_fail = 0;
  double worst_rest = 0.0;
  for (const auto& result : runs.results) {
    audit.add(result.trace);
    std::size_t found = 0;
    for (std::size_t a = 0; a < runs.scenario.anomalies.size(); ++a) {
      bool hit = false;
      for (const auto& d : result.detections) hit = hit || d.anomaly == a;
      found += hit ? 1 : 0;
    }
    all_four += found == runs.scenario.anomalies.size() ? 1 : 0;

    const auto& trace = result.trace;
    const std::size_t m = runs.scenario.graph.region_count;
    std::vector<double> last_retained(m, 2.0);
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const auto& row = trace[i];
      const double ut = *row.utilization;
      if (row.event == sim::EventKind::allocate && ut > u.threshold + 1e-12) ++util_fail;
      if (row.event == sim::EventKind::decide) {
        const double bound = u.threshold + (1.0 - u.threshold) * (1.0 - std::exp(-*row.allocation / u.sensitivity));
        if (ut > bound + 1e-12) ++util_fail;
      }
      if (row.event == sim::EventKind::rest) {
        ++rest_events;
        const double before = *trace[i - 1].utilization;
        const double expected = u.sensitivity * std::log(before / u.optimal);
        const double err = std::max(std::abs(*row.allocation - expected), std::abs(ut - u.optimal));
        worst_rest = std::max(worst_rest, err);
        if (err > 1e-9) ++rest_fail;
      }
      for (std::size_t k = 0; k < m; ++k) {
        const bool visit = (row.event == sim::EventKind::decide || row.event == sim::EventKind::detect) &&
                           row.region == k;
        if (visit) {
          last_retained[k] = row.retained[k];
          continue;
        }
        if (row.retained[k] > last_retained[k] + 1e-12 || row.retained[k] < 0.5) ++retention_fail;
        last_retained[k] = row.retained[k];
      }
    }
  }
  const std::size_t n = runs.results.size();
  r.passed = 10 * all_four >= 8 * n && util_fail == 0 && rest_fail == 0 && retention_fail == 0;
  r.detail = "all four detected in " + std::to_string(all_four) + "/" + std::to_string(n) +
             " runs (need >= 80%); utilization bound violations " + std::to_string(util_fail) + "; " +
             std::to_string(rest_events) + " rest events, worst error " + fixed(worst_rest) +
             "; retained-belief monotonicity violations " + std::to_string(retention_fail);
  return r;
}

CriterionResult criterion_determinism(const AcceptanceConfig& config, Audit& audit) {
  CriterionResult r{8, "Determinism and round-trip", true, "", 0.0, 5.0};
  std::ostringstream detail;
  for (const char* name : {"case1.scn", "case2.scn"}) {
    sim::Scenario s = io::load_scenario(config.scenario_dir / name);
    s.seed = 7;
    const auto first = sim::run(s);
    const auto second = sim::run(s);
    audit.add(first.trace);
    const bool same = io::trace_to_string(s, first.trace) == io::trace_to_string(s, second.trace);
    const std::string text = io::scenario_to_string(s);
    const sim::Scenario back = io::parse_scenario_text(text);
    const bool round_trip = back == s && io::scenario_to_string(back) == text;
    r.passed = r.passed && same && round_trip;
    if (detail.tellp() > 0) detail << "; ";
    detail << name << ": traces " << (same ? "identical" : "DIFFER") << ", round trip "
           << (round_trip ? "exact" : "BROKEN");
  }
  r.detail = detail.str();
  return r;
}

CriterionResult criterion_beliefs(const Audit& audit) {
  CriterionResult r{9, "Belief safety", false, "", 0.0, 0.0};
  r.passed = audit.rows > 0 && audit.belief_violations == 0 && audit.statistic_violations == 0 &&
             audit.routing_violations == 0;
  r.detail = std::to_string(audit.rows) + " trace rows audited; beliefs outside [0.5, 1-1e-9]: " +
             std::to_string(audit.belief_violations) + "; negative Lambda: " +
             std::to_string(audit.statistic_violations) + "; routing sums off by > 1e-12: " +
             std::to_string(audit.routing_violations);
  return r;
}

CriterionResult timed(const std::function<CriterionResult()>& body) {
  const auto start = Clock::now();
  CriterionResult r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (r.limit_seconds > 0.0 && r.seconds >= r.limit_seconds) {
    r.passed = false;
    r.detail += "; runtime limit " + fixed(r.limit_seconds) + " s exceeded";
  }
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config) {
  Audit audit;
  std::vector<CriterionResult> out;
  auto add = [&](int id, const char* title, double limit, const std::function<CriterionResult()>& body) {
    CriterionResult r = timed(body);
    r.id = id;
    r.title = title;
    r.limit_seconds = limit;
    out.push_back(std::move(r));
  };
  add(1, "Metropolis-Hastings correctness", 1.0, criterion_metropolis);
  add(2, "DDM formula suite", 30.0, criterion_ddm);
  add(3, "CUSUM operating characteristic", 10.0, criterion_cusum);
  add(4, "Sigmoid knapsack 2-factor guarantee", 30.0, criterion_knapsack);
  add(5, "Receding-horizon DP", 60.0, criterion_horizon);
  add(6, "Case study 1 reproduction", 120.0, [&] { return criterion_case1(config, audit); });
  add(7, "Case study 2 reproduction", 180.0, [&] { return criterion_case2(config, audit); });
  add(8, "Determinism and round-trip", 5.0, [&] { return criterion_determinism(config, audit); });
  add(9, "Belief safety", 0.0, [&] { return criterion_beliefs(audit); });
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "[%s] %d %s (%.2f s): ", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace cams::validation
