#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "cams/decision_support.hpp"
#include "cams/operator_state.hpp"
#include "cams/rng.hpp"
#include "cams/routing.hpp"

namespace cams::sim {

enum class RoutingMode { likelihood, metropolis_hastings };

struct Anomaly {
  std::size_t region = 0;
  double onset = 0.0;

  friend bool operator==(const Anomaly&, const Anomaly&) = default;
};

struct AlgorithmParams {
  int horizon = 5;
  dss::Grids grids;
  double cusum_threshold = 5.0;
  double critical_belief = 0.8;
  RoutingMode routing_mode = RoutingMode::likelihood;

  friend bool operator==(const AlgorithmParams&, const AlgorithmParams&) = default;
};

struct Scenario {
  routing::SurveillanceGraph graph;
  std::vector<Anomaly> anomalies;
  ddm::DdmParams ddm;
  op::ExogenousModel human_factors;  // only consulted when exogenous_factors is set
  double initial_utilization = 0.7;
  AlgorithmParams algorithm;
  double duration = 600.0;
  std::uint64_t seed = 1;
  bool exogenous_factors = false;

  op::OperatorModel operator_model() const;

  /// Every consistency problem found; empty when the scenario is runnable.
  std::vector<std::string> problems() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Task {
  std::size_t region = 0;
  double enqueued_at = 0.0;
  bool anomalous = false;  // ground truth when the data was collected; never shown to the operator
};

enum class EventKind { enqueue, allocate, decide, detect, rest, route };

const char* to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(const std::string& text);

struct TraceRecord {
  double time = 0.0;
  EventKind event = EventKind::enqueue;
  std::optional<std::size_t> region;
  std::optional<double> allocation;  // task duration, or the idle duration of a rest
  std::optional<int> decision;
  std::size_t queue_length = 0;  // tasks waiting, excluding the one in service
  std::optional<double> motor_time;
  std::optional<double> utilization;
  std::optional<double> task_effectiveness;
  std::vector<double> statistics;  // CUSUM Lambda per region
  std::vector<double> routing;     // q per region
  std::vector<double> beliefs;     // stored belief per region
  std::vector<double> retained;    // belief the operator would bring to a task now

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct Detection {
  double time = 0.0;
  std::size_t region = 0;
  std::optional<std::size_t> anomaly;  // index into the schedule, empty for a false alarm
};

struct RunResult {
  std::vector<TraceRecord> trace;
  std::vector<Detection> detections;
  std::size_t tasks_processed = 0;

  std::size_t false_alarms() const;
  /// Every scheduled anomaly was detected, and in onset order.
  bool all_detected_in_order(const Scenario& scenario) const;
};

/// Runs the closed loop from the scenario's own seed.
RunResult run(const Scenario& scenario);

/// Correct label with probability `accuracy`, the other one otherwise.
int simulate_operator_decision(RngStream& rng, bool anomalous, double accuracy);

/// Keeps only the oldest task.
void drop_pending(std::deque<Task>& queue);

}  // namespace cams::sim
