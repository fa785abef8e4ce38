#include "cams/human_factors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cams/errors.hpp"

namespace cams::hf {

double UtilizationParams::motor_poly_at(double u) const noexcept {
  double total = 0.0;
  for (const auto& term : motor_poly) total += term.coefficient * std::pow(u, term.power);
  return total;
}

double SleepSchedule::hours_awake(double now_minutes) const noexcept { return now_minutes / 60.0; }

double SleepSchedule::time_of_day(double now_minutes) const noexcept {
  const double h = std::fmod(wake_hour + now_minutes / 60.0, 24.0);
  return h < 0.0 ? h + 24.0 : h;
}

double task_effectiveness(double hours_awake, double time_of_day, const SafteParams& safte) {
  if (hours_awake < 0.0) throw DomainError("task_effectiveness: hours_awake must be >= 0");
  const double depletion = 60.0 * safte.drain_rate * hours_awake / safte.reservoir_capacity;
  const double phase = time_of_day - safte.peak_hour;
  const double circadian = std::cos(2.0 * std::numbers::pi / 24.0 * phase) +
                           safte.second_harmonic *
                               std::cos(4.0 * std::numbers::pi / 24.0 * (phase - safte.relative_peak));
  const double raw = 100.0 * (1.0 - depletion) + (safte.amp1 + safte.amp2 * depletion) * circadian;
  if (!(raw > 0.0)) {
    throw FatigueExhaustion("task effectiveness exhausted after " + std::to_string(hours_awake) +
                            " hours awake");
  }
  return raw / 100.0;
}

double fatigue_floor(const ddm::DdmParams& ddm) {
  const double mu = ddm.drift_magnitude;
  const double sigma = ddm.diffusion;
  return std::tanh(mu * mu * ddm.error_cost / (4.0 * ddm.delay_cost * sigma * sigma));
}

double effective_drift(double mu, double sigma, double xi1, double xi2, double te) {
  const double s = std::tanh(mu * mu * xi2 / (4.0 * xi1 * sigma * sigma));
  if (!(te > s)) {
    throw FatigueExhaustion("effective_drift: task effectiveness " + std::to_string(te) +
                            " is not above " + std::to_string(s));
  }
  return std::sqrt(2.0 * xi1 * sigma * sigma / xi2 * std::log((te + s) / (te - s)));
}

double effective_drift(const ddm::DdmParams& ddm, double te) {
  return effective_drift(ddm.drift_magnitude, ddm.diffusion, ddm.delay_cost, ddm.error_cost, te);
}

double utilization_after_task(double u, double busy, double idle, double tau) {
  const double busy_decay = std::exp(-busy / tau);
  const double after = (1.0 - busy_decay + u * busy_decay) * std::exp(-idle / tau);
  return std::clamp(after, 0.0, 1.0);
}

double motor_time(double u, double te, const UtilizationParams& params) {
  return std::max(0.0, params.motor_poly_at(u) / te);
}

double rest_time(double u, const UtilizationParams& params) {
  if (u <= params.threshold) return 0.0;
  return params.sensitivity * std::log(u / params.optimal);
}

double retention(double elapsed, const RetentionParams& p) {
  const double raw = p.w1 * std::exp(-p.time_scale * elapsed / p.tau1) +
                     p.w2 * std::exp(-p.time_scale * elapsed / p.tau2) + p.floor;
  return std::min(1.0, raw);
}

double retained_belief(double pi_last, double elapsed, const RetentionParams& params) {
  if (!(pi_last >= 0.5 && pi_last < 1.0)) {
    throw DomainError("retained_belief: pi_last must lie in [0.5, 1)");
  }
  const double log_odds = std::log(pi_last / (1.0 - pi_last)) * retention(elapsed, params);
  return 1.0 / (1.0 + std::exp(-log_odds));
}

double unified_accuracy(Hypothesis hypothesis, double t, const OperatorCondition& condition,
                        const ddm::DdmParams& ddm, const UtilizationParams& uparams,
                        const RetentionParams& rparams) {
  if (t < 0.0) throw DomainError("unified_accuracy: t must be >= 0");
  const double te = condition.task_effectiveness;
  const double mu_eff = effective_drift(ddm, te);
  const double wait = motor_time(condition.utilization, te, uparams);
  const double pi = condition.belief_at_last;
  const double x_init = ddm.diffusion * ddm.diffusion * std::log(pi / (1.0 - pi)) / (2.0 * mu_eff) *
                        retention(condition.elapsed_since_last, rparams);
  ddm::DdmParams fatigued = ddm;
  fatigued.drift_magnitude = mu_eff;
  const double effective = std::max(0.0, t - wait);
  return hypothesis == Hypothesis::anomalous ? ddm::accuracy_upper_extended(effective, x_init, fatigued)
                                             : ddm::accuracy_lower_extended(effective, x_init, fatigued);
}

}  // namespace cams::hf
