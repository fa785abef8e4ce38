#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cams/ddm.hpp"
#include "cams/human_factors.hpp"

namespace cams::op {

/// Largest belief the operator may hold; keeps log-odds finite.
inline constexpr double kBeliefCap = 1.0 - 1e-9;

/// Beliefs below this are reset up to it after every update.
inline constexpr double kBeliefFloor = 0.5;

struct RegionBelief {
  double current = kBeliefFloor;
  std::optional<double> last_processed_at;
  double belief_at_last = kBeliefFloor;

  friend bool operator==(const RegionBelief&, const RegionBelief&) = default;
};

struct OperatorState {
  double utilization = 0.0;
  std::vector<RegionBelief> beliefs;
  double clock_awake = 0.0;  // hours
  double time_of_day = 0.0;  // hours

  static OperatorState unbiased(std::size_t regions, double utilization);

  friend bool operator==(const OperatorState&, const OperatorState&) = default;
};

/// Fatigue, workload and memory models. Absent in the pure decision model.
struct ExogenousModel {
  hf::SafteParams safte;
  hf::UtilizationParams utilization;
  hf::RetentionParams retention;
  hf::SleepSchedule sleep;

  friend bool operator==(const ExogenousModel&, const ExogenousModel&) = default;
};

struct OperatorModel {
  ddm::DdmParams ddm;
  std::optional<ExogenousModel> exogenous;

  friend bool operator==(const OperatorModel&, const OperatorModel&) = default;
};

/// Operator accuracy on one region's task, frozen at the moment processing
/// starts. `prior` is the belief that the region is anomalous; it weighs the
/// two per-hypothesis accuracies and seeds the Bayes update.
struct PerformanceCurve {
  ddm::DdmParams ddm;  // drift already fatigue-adjusted when applicable
  double x_init = 0.0;
  double wait = 0.0;
  double prior = kBeliefFloor;
  double task_effectiveness = 1.0;

  double anomalous(double t) const;
  double nominal(double t) const;
  /// (1 - prior) * nominal(t) + prior * anomalous(t)
  double expected(double t) const;
};

/// Belief entering the next task from `region` at time `now`: the stored
/// belief for the pure model, its retention-discounted value otherwise.
double effective_prior(const OperatorModel& model, const OperatorState& state, std::size_t region,
                       double now);

/// Task effectiveness at `now`, floored just above the level where the
/// effective drift diverges (a warning is logged when the floor binds).
double clamped_task_effectiveness(const OperatorModel& model, double now);

PerformanceCurve performance(const OperatorModel& model, const OperatorState& state, std::size_t region,
                             double now);

/// prior * P(dec|H1) / ((1 - prior) P(dec|H0) + prior P(dec|H1)), capped at kBeliefCap.
double bayes_update(double prior, double p_dec_given_h1, double p_dec_given_h0);

double reset_floor(double pi);

/// Folds one decision on a task from `region` that started at `now` and took
/// `allocation` into the operator state. Zero allocations leave it unchanged.
OperatorState process_decision(OperatorState state, std::size_t region, double allocation, int decision,
                               double now, const OperatorModel& model);

OperatorState reset_after_detection(OperatorState state, std::size_t region);

/// Updates the wall-clock fields from the sleep schedule.
void advance_clock(OperatorState& state, double now, const hf::SleepSchedule& sleep);

}  // namespace cams::op
