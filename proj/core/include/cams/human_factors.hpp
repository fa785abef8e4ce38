#pragma once

#include <vector>

#include "cams/ddm.hpp"

// Exogenous influences on operator performance: circadian/sleep fatigue,
// workload (utilization) and memory retention, plus the unified accuracy
// function that composes them with the drift-diffusion model.
//
// Simulation time is in minutes. The fatigue model consumes hours.

namespace cams::hf {

struct SafteParams {
  double reservoir_capacity = 2880.0;  // R_c, units
  double drain_rate = 0.5;             // K, units per minute
  double amp1 = 7.0;
  double amp2 = 5.0;
  double second_harmonic = 0.5;  // beta
  double peak_hour = 18.0;       // p
  double relative_peak = 3.0;    // p'

  friend bool operator==(const SafteParams&, const SafteParams&) = default;
};

/// One term c * u^power of the sensory-motor time polynomial. Terms are kept
/// as written, so a polynomial may carry two constant terms.
struct MotorTerm {
  double coefficient = 0.0;
  int power = 0;

  friend bool operator==(const MotorTerm&, const MotorTerm&) = default;
};

struct UtilizationParams {
  double sensitivity = 100.0;  // tau
  double optimal = 0.7;        // u_opt
  double threshold = 0.85;     // u_th
  std::vector<MotorTerm> motor_poly{{54.0, 0}, {-155.0, 1}, {132.0, 2}, {-9.0, 0}};

  /// Raw polynomial value at u, without fatigue scaling or clamping.
  double motor_poly_at(double u) const noexcept;

  friend bool operator==(const UtilizationParams&, const UtilizationParams&) = default;
};

/// rem(t) = min(1, w1 exp(-scale t / tau1) + w2 exp(-scale t / tau2) + floor)
struct RetentionParams {
  double w1 = 4.6;
  double w2 = 1.5;
  double floor = 0.1;
  double tau1 = 1.15;
  double tau2 = 27.55;
  double time_scale = 10.0;

  friend bool operator==(const RetentionParams&, const RetentionParams&) = default;
};

struct SleepSchedule {
  double wake_hour = 6.0;
  double hours_slept = 6.0;

  /// Hours awake at simulation minute `now` (the mission starts at wake-up).
  double hours_awake(double now_minutes) const noexcept;
  /// Clock hour in [0, 24) at simulation minute `now`.
  double time_of_day(double now_minutes) const noexcept;

  friend bool operator==(const SleepSchedule&, const SleepSchedule&) = default;
};

enum class Hypothesis { nominal, anomalous };

/// Fatigue task effectiveness, normalized so a rested operator at the
/// circadian baseline scores 1. Throws FatigueExhaustion when it reaches 0.
double task_effectiveness(double hours_awake, double time_of_day, const SafteParams& safte);

/// tanh(mu^2 xi2 / (4 xi1 sigma^2)); effective_drift is defined only for te above it.
double fatigue_floor(const ddm::DdmParams& ddm);

/// Drift rate that reproduces the rested decision time scaled by 1/te under
/// Bayes-risk-limiting thresholds. Throws FatigueExhaustion if te is at or
/// below fatigue_floor.
double effective_drift(double mu, double sigma, double xi1, double xi2, double te);
double effective_drift(const ddm::DdmParams& ddm, double te);

/// Utilization after `busy` minutes of work followed by `idle` minutes of rest.
double utilization_after_task(double u, double busy, double idle, double tau);

/// Sensory-motor delay for a fatigued operator, motor_poly(u) / te, floored at 0.
double motor_time(double u, double te, const UtilizationParams& params);

/// Idle time that brings utilization from u back to the optimum; 0 unless u
/// exceeds the threshold.
double rest_time(double u, const UtilizationParams& params);

/// Fraction of acquired belief (in log-odds) still retained after `elapsed`.
double retention(double elapsed, const RetentionParams& params);

/// Belief after forgetting: logistic(log-odds(pi_last) * rem(elapsed)).
double retained_belief(double pi_last, double elapsed, const RetentionParams& params);

/// Everything the unified accuracy needs about the operator at one instant.
struct OperatorCondition {
  double utilization = 0.7;
  double task_effectiveness = 1.0;
  double elapsed_since_last = 0.0;  // time since this region was last processed
  double belief_at_last = 0.5;      // belief after that processing
};

/// Accuracy on a task of the given ground truth after allocating t minutes,
/// with fatigue-scaled drift and motor delay and a retention-discounted
/// initial bias. When no evidence is collected (t at or below the motor
/// delay) the value is the t -> 0+ limit: 0.5 without bias, otherwise 0 or 1
/// by the side of nu the initial evidence sits on.
double unified_accuracy(Hypothesis hypothesis, double t, const OperatorCondition& condition,
                        const ddm::DdmParams& ddm, const UtilizationParams& uparams,
                        const RetentionParams& rparams);

}  // namespace cams::hf
