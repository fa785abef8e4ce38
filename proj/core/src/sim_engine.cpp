#include "cams/sim_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "cams/detection.hpp"
#include "cams/errors.hpp"
#include "cams/human_factors.hpp"
#include "cams/logging.hpp"

namespace cams::sim {

namespace {

constexpr std::array<const char*, 6> kEventNames{"enqueue", "allocate", "decide", "detect", "rest", "route"};
constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string fmt_problem(const std::string& key, const std::string& what) { return key + ": " + what; }

class Engine {
 public:
  explicit Engine(const Scenario& scenario)
      : scenario_(scenario),
        model_(scenario.operator_model()),
        m_(scenario.graph.region_count),
        bank_(m_, scenario.algorithm.cusum_threshold),
        state_(op::OperatorState::unbiased(m_, scenario.initial_utilization)),
        policy_(routing::RoutingPolicy::uniform(m_)),
        removed_(scenario.anomalies.size(), false),
        routing_rng_(scenario.seed, "routing"),
        decision_rng_(scenario.seed, "decisions") {}

  RunResult run();

 private:
  enum class Phase { idle, serving, resting };

  bool anomaly_active(std::size_t region, double t) const;
  std::optional<std::size_t> active_anomaly(std::size_t region, double t) const;
  void refresh_routing();
  std::size_t next_vehicle_region();
  void vehicle_arrival();
  void start_service();
  void complete_service();
  void emit(EventKind kind, double time, std::optional<std::size_t> region = std::nullopt);
  double latency_time_step() const { return scenario_.algorithm.grids.time_step; }

  const Scenario& scenario_;
  const op::OperatorModel model_;
  const std::size_t m_;
  detect::CusumBank bank_;
  op::OperatorState state_;
  routing::RoutingPolicy policy_;
  Matrix chain_;  // Metropolis-Hastings transition matrix for the current target
  std::vector<bool> removed_;
  RngStream routing_rng_;
  RngStream decision_rng_;
  std::deque<Task> queue_;
  RunResult result_;

  // Vehicle process.
  std::size_t vehicle_region_ = 0;
  double next_arrival_ = 0.0;

  // Operator process.
  Phase phase_ = Phase::idle;
  double free_since_ = 0.0;
  double phase_ends_ = kInfinity;
  Task current_;
  op::PerformanceCurve current_curve_;
  double current_allocation_ = 0.0;
  double current_start_ = 0.0;
  double now_ = 0.0;
};

bool Engine::anomaly_active(std::size_t region, double t) const { return active_anomaly(region, t).has_value(); }

std::optional<std::size_t> Engine::active_anomaly(std::size_t region, double t) const {
  for (std::size_t i = 0; i < scenario_.anomalies.size(); ++i) {
    const Anomaly& a = scenario_.anomalies[i];
    if (a.region == region && a.onset <= t && !removed_[i]) return i;
  }
  return std::nullopt;
}

void Engine::emit(EventKind kind, double time, std::optional<std::size_t> region) {
  TraceRecord r;
  r.time = time;
  r.event = kind;
  r.region = region;
  r.queue_length = queue_.size();
  if (model_.exogenous) r.utilization = state_.utilization;
  r.statistics = bank_.statistics();
  r.routing = policy_.q;
  r.beliefs.reserve(m_);
  r.retained.reserve(m_);
  for (std::size_t k = 0; k < m_; ++k) {
    r.beliefs.push_back(state_.beliefs[k].current);
    r.retained.push_back(op::effective_prior(model_, state_, k, time));
  }
  result_.trace.push_back(std::move(r));
}

void Engine::refresh_routing() {
  policy_ = routing::likelihood_routing(bank_);
  if (scenario_.algorithm.routing_mode == RoutingMode::metropolis_hastings) {
    chain_ = routing::metropolis_hastings(scenario_.graph, policy_.q);
  }
}

std::size_t Engine::next_vehicle_region() {
  if (scenario_.algorithm.routing_mode == RoutingMode::likelihood) {
    return routing::sample_next_region(policy_, routing_rng_);
  }
  std::vector<double> row(m_);
  for (std::size_t j = 0; j < m_; ++j) row[j] = chain_(vehicle_region_, j);
  return routing::sample_index(row, routing_rng_);
}

void Engine::vehicle_arrival() {
  now_ = next_arrival_;
  queue_.push_back(Task{vehicle_region_, now_, anomaly_active(vehicle_region_, now_)});
  emit(EventKind::enqueue, now_, vehicle_region_);
  const std::size_t next = next_vehicle_region();
  next_arrival_ = now_ + scenario_.graph.travel(vehicle_region_, next) + scenario_.graph.collection[next];
  vehicle_region_ = next;
}

void Engine::start_service() {
  while (phase_ == Phase::idle && !queue_.empty()) {
    const double idle = now_ - free_since_;
    if (model_.exogenous) {
      if (idle > 0.0) {
        state_.utilization = hf::utilization_after_task(state_.utilization, 0.0, idle,
                                                        model_.exogenous->utilization.sensitivity);
      }
      op::advance_clock(state_, now_, model_.exogenous->sleep);
    }
    free_since_ = now_;
    current_ = queue_.front();
    queue_.pop_front();

    // Freeze one accuracy curve per region at the start of service.
    std::vector<op::PerformanceCurve> curves;
    std::vector<dss::TaskSnapshot> per_region;
    curves.reserve(m_);
    per_region.reserve(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      curves.push_back(op::performance(model_, state_, k, now_));
      dss::TaskSnapshot snap;
      snap.region = k;
      snap.performance = [c = curves.back()](double t) { return c.expected(t); };
      snap.weight = scenario_.graph.weights[k];
      snap.deadline = scenario_.graph.deadlines[k];
      snap.latency_rate = dss::latency_rate(snap, latency_time_step());
      per_region.push_back(std::move(snap));
    }

    dss::HorizonProblem problem;
    problem.horizon = scenario_.algorithm.horizon;
    problem.grids = scenario_.algorithm.grids;
    problem.routing = policy_;
    problem.arrival_rate = 1.0 / routing::expected_cycle_time(policy_, scenario_.graph);
    problem.expected = dss::expected_task_params(policy_, per_region);
    problem.queue.push_back(per_region[current_.region]);
    for (const Task& t : queue_) problem.queue.push_back(per_region[t.region]);
    problem.grids.queue_cap = std::max(problem.grids.queue_cap, static_cast<double>(problem.queue.size()));

    current_curve_ = curves[current_.region];
    current_allocation_ =
        dss::allocate(problem, current_curve_.prior, scenario_.algorithm.critical_belief);
    current_start_ = now_;

    emit(EventKind::allocate, now_, current_.region);
    TraceRecord& row = result_.trace.back();
    row.allocation = current_allocation_;
    if (model_.exogenous) {
      row.motor_time = current_curve_.wait;
      row.task_effectiveness = current_curve_.task_effectiveness;
    }

    if (current_allocation_ > 0.0) {
      phase_ = Phase::serving;
      phase_ends_ = now_ + current_allocation_;
    }
  }
}

void Engine::complete_service() {
  now_ = phase_ends_;
  const double t = current_allocation_;
  const bool truth = current_.anomalous;
  const double f1 = current_curve_.anomalous(t);
  const double f0 = current_curve_.nominal(t);
  const int decision = simulate_operator_decision(decision_rng_, truth, truth ? f1 : f0);
  ++result_.tasks_processed;

  state_ = op::process_decision(std::move(state_), current_.region, t, decision, current_start_, model_);
  const bool detected = bank_.observe(current_.region, t, decision, f1, f0);

  emit(EventKind::decide, now_, current_.region);
  result_.trace.back().decision = decision;
  result_.trace.back().allocation = t;

  if (detected) {
    Detection d;
    d.time = now_;
    d.region = current_.region;
    d.anomaly = active_anomaly(current_.region, now_);
    if (d.anomaly) removed_[*d.anomaly] = true;
    result_.detections.push_back(d);
    state_ = op::reset_after_detection(std::move(state_), current_.region);
    drop_pending(queue_);
    emit(EventKind::detect, now_, current_.region);
  }

  refresh_routing();
  emit(EventKind::route, now_);

  phase_ = Phase::idle;
  phase_ends_ = kInfinity;
  free_since_ = now_;
  if (model_.exogenous) {
    const double rest = hf::rest_time(state_.utilization, model_.exogenous->utilization);
    if (rest > 0.0) {
      state_.utilization = hf::utilization_after_task(state_.utilization, 0.0, rest,
                                                      model_.exogenous->utilization.sensitivity);
      emit(EventKind::rest, now_);
      result_.trace.back().allocation = rest;
      phase_ = Phase::resting;
      phase_ends_ = now_ + rest;
    }
  }
}

RunResult Engine::run() {
  const double duration = scenario_.duration;
  if (model_.exogenous) op::advance_clock(state_, 0.0, model_.exogenous->sleep);
  refresh_routing();

  // The vehicle starts at its first region; only collection time elapses.
  vehicle_region_ = routing::sample_next_region(policy_, routing_rng_);
  next_arrival_ = scenario_.graph.collection[vehicle_region_];

  const char* stage = "start";
  try {
    while (true) {
      const double operator_event = phase_ == Phase::idle ? kInfinity : phase_ends_;
      if (std::min(operator_event, next_arrival_) > duration) break;
      // Operator events go first at equal times.
      if (operator_event <= next_arrival_) {
        if (phase_ == Phase::serving) {
          stage = "decide";
          complete_service();
        } else {
          now_ = phase_ends_;
          free_since_ = now_;
          phase_ = Phase::idle;
          phase_ends_ = kInfinity;
        }
      } else {
        stage = "enqueue";
        vehicle_arrival();
      }
      stage = "allocate";
      start_service();
    }
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "simulation aborted at t=" << now_ << " during " << stage << ": " << e.what();
    throw SimulationError(msg.str());
  }
  return std::move(result_);
}

}  // namespace

op::OperatorModel Scenario::operator_model() const {
  op::OperatorModel model;
  model.ddm = ddm;
  if (exogenous_factors) model.exogenous = human_factors;
  return model;
}

std::vector<std::string> Scenario::problems() const {
  std::vector<std::string> out;
  const std::size_t m = graph.region_count;
  if (m == 0) out.push_back(fmt_problem("graph", "no regions"));
  if (graph.travel.rows() != m || graph.travel.cols() != m) {
    out.push_back(fmt_problem("travel", "matrix must be " + std::to_string(m) + "x" + std::to_string(m)));
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      if (graph.travel(i, i) != 0.0) out.push_back(fmt_problem("travel", "diagonal must be zero"));
      for (std::size_t j = 0; j < m; ++j) {
        if (graph.travel(i, j) < 0.0) out.push_back(fmt_problem("travel", "negative entry"));
        if (graph.travel(i, j) != graph.travel(j, i)) {
          out.push_back(fmt_problem("travel", "matrix is not symmetric at (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ")"));
        }
      }
    }
  }
  if (graph.adjacency.rows() != m || graph.adjacency.cols() != m) {
    out.push_back(fmt_problem("adjacency", "matrix must be " + std::to_string(m) + "x" + std::to_string(m)));
  } else if (m > 0 && !graph.connected()) {
    out.push_back(fmt_problem("adjacency", "graph is not connected"));
  }
  auto check_vector = [&](const std::vector<double>& v, const char* key, bool allow_zero) {
    if (v.size() != m) {
      out.push_back(fmt_problem(key, "expected " + std::to_string(m) + " values, got " + std::to_string(v.size())));
      return;
    }
    for (double x : v) {
      if (allow_zero ? !(x >= 0.0) : !(x > 0.0)) {
        out.push_back(fmt_problem(key, allow_zero ? "values must be >= 0" : "values must be > 0"));
        return;
      }
    }
  };
  check_vector(graph.collection, "collection", true);
  check_vector(graph.weights, "weights", false);
  check_vector(graph.deadlines, "deadlines", false);
  if (graph.collection.size() == m && m > 0 &&
      *std::max_element(graph.collection.begin(), graph.collection.end()) <= 0.0) {
    out.push_back(fmt_problem("collection", "at least one collection time must be > 0"));
  }

  for (const Anomaly& a : anomalies) {
    if (a.region >= m) out.push_back(fmt_problem("onset", "region " + std::to_string(a.region) + " does not exist"));
    if (!(a.onset >= 0.0 && a.onset < duration)) {
      out.push_back(fmt_problem("onset", "time must lie in [0, duration)"));
    }
  }
  if (!(ddm.drift_magnitude > 0.0)) out.push_back(fmt_problem("drift", "must be > 0"));
  if (!(ddm.diffusion > 0.0)) out.push_back(fmt_problem("diffusion", "must be > 0"));
  if (!(ddm.delay_cost > 0.0)) out.push_back(fmt_problem("delay_cost", "must be > 0"));
  if (!(ddm.error_cost > 0.0)) out.push_back(fmt_problem("error_cost", "must be > 0"));
  if (!(initial_utilization >= 0.0 && initial_utilization <= 1.0)) {
    out.push_back(fmt_problem("initial_utilization", "must lie in [0, 1]"));
  }
  const auto& u = human_factors.utilization;
  if (!(u.sensitivity > 0.0)) out.push_back(fmt_problem("sensitivity", "must be > 0"));
  if (!(u.optimal > 0.0 && u.optimal < u.threshold && u.threshold <= 1.0)) {
    out.push_back(fmt_problem("utilization_threshold", "need 0 < optimal < threshold <= 1"));
  }
  if (!(human_factors.safte.reservoir_capacity > 0.0)) {
    out.push_back(fmt_problem("reservoir_capacity", "must be > 0"));
  }
  const auto& r = human_factors.retention;
  if (!(r.tau1 > 0.0 && r.tau2 > 0.0 && r.time_scale > 0.0)) {
    out.push_back(fmt_problem("retention", "time constants must be > 0"));
  }

  if (algorithm.horizon < 1) out.push_back(fmt_problem("horizon", "must be >= 1"));
  if (!(algorithm.grids.time_step > 0.0)) out.push_back(fmt_problem("time_step", "must be > 0"));
  if (!(algorithm.grids.queue_step > 0.0)) out.push_back(fmt_problem("queue_step", "must be > 0"));
  if (!(algorithm.grids.queue_cap >= 1.0)) out.push_back(fmt_problem("queue_cap", "must be >= 1"));
  if (!(algorithm.cusum_threshold > 0.0)) out.push_back(fmt_problem("cusum_threshold", "must be > 0"));
  if (!(algorithm.critical_belief > 0.0 && algorithm.critical_belief < 1.0)) {
    out.push_back(fmt_problem("critical_belief", "must lie in (0, 1)"));
  }
  if (!(duration > 0.0)) out.push_back(fmt_problem("duration", "must be > 0"));
  return out;
}

const char* to_string(EventKind kind) { return kEventNames[static_cast<std::size_t>(kind)]; }

std::optional<EventKind> parse_event_kind(const std::string& text) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (text == kEventNames[i]) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

std::size_t RunResult::false_alarms() const {
  return static_cast<std::size_t>(
      std::count_if(detections.begin(), detections.end(), [](const Detection& d) { return !d.anomaly; }));
}

bool RunResult::all_detected_in_order(const Scenario& scenario) const {
  std::vector<std::optional<double>> found(scenario.anomalies.size());
  for (const Detection& d : detections) {
    if (d.anomaly && !found[*d.anomaly]) found[*d.anomaly] = d.time;
  }
  std::vector<std::size_t> order(scenario.anomalies.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scenario.anomalies[a].onset < scenario.anomalies[b].onset;
  });
  double last = -kInfinity;
  for (std::size_t i : order) {
    if (!found[i] || *found[i] < last) return false;
    last = *found[i];
  }
  return true;
}

RunResult run(const Scenario& scenario) {
  const auto issues = scenario.problems();
  if (!issues.empty()) throw ScenarioError(issues);
  Engine engine(scenario);
  return engine.run();
}

int simulate_operator_decision(RngStream& rng, bool anomalous, double accuracy) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) throw DomainError("accuracy must lie in [0, 1]");
  const bool correct = rng.uniform() < accuracy;
  return (correct == anomalous) ? 1 : 0;
}

void drop_pending(std::deque<Task>& queue) {
  if (queue.size() > 1) queue.erase(queue.begin() + 1, queue.end());
}

}  // namespace cams::sim
