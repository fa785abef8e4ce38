#include "cams/operator_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cams/errors.hpp"
#include "cams/logging.hpp"

namespace cams::op {

OperatorState OperatorState::unbiased(std::size_t regions, double utilization) {
  OperatorState state;
  state.utilization = utilization;
  state.beliefs.assign(regions, RegionBelief{});
  return state;
}

double PerformanceCurve::anomalous(double t) const {
  return ddm::accuracy_upper_extended(t - wait, x_init, ddm);
}

double PerformanceCurve::nominal(double t) const {
  return ddm::accuracy_lower_extended(t - wait, x_init, ddm);
}

double PerformanceCurve::expected(double t) const {
  return ddm::expected_accuracy(prior, anomalous(t), nominal(t));
}

double effective_prior(const OperatorModel& model, const OperatorState& state, std::size_t region,
                       double now) {
  const RegionBelief& belief = state.beliefs.at(region);
  if (!model.exogenous) return belief.current;
  if (!belief.last_processed_at) return kBeliefFloor;
  const double elapsed = std::max(0.0, now - *belief.last_processed_at);
  return hf::retained_belief(belief.belief_at_last, elapsed, model.exogenous->retention);
}

double clamped_task_effectiveness(const OperatorModel& model, double now) {
  if (!model.exogenous) return 1.0;
  const auto& sleep = model.exogenous->sleep;
  const double te =
      hf::task_effectiveness(sleep.hours_awake(now), sleep.time_of_day(now), model.exogenous->safte);
  const double floor = hf::fatigue_floor(model.ddm) + 1e-6;
  if (te < floor) {
    logger().warn("task effectiveness {} at t={} clamped to {}", te, now, floor);
    return floor;
  }
  return te;
}

PerformanceCurve performance(const OperatorModel& model, const OperatorState& state, std::size_t region,
                             double now) {
  PerformanceCurve curve;
  curve.ddm = model.ddm;
  curve.prior = effective_prior(model, state, region, now);
  if (model.exogenous) {
    const double te = clamped_task_effectiveness(model, now);
    curve.task_effectiveness = te;
    curve.ddm.drift_magnitude = hf::effective_drift(model.ddm, te);
    curve.wait = hf::motor_time(state.utilization, te, model.exogenous->utilization);
  }
  // The retention-discounted log-odds already live in the prior, so this is
  // sigma^2 log-odds(pi_last) rem(elapsed) / (2 mu_eff).
  curve.x_init = ddm::initial_evidence(curve.prior, curve.ddm);
  return curve;
}

double bayes_update(double prior, double p_dec_given_h1, double p_dec_given_h0) {
  if (!(prior > 0.0 && prior < 1.0)) throw DomainError("bayes_update: prior must lie in (0,1)");
  const double num = prior * p_dec_given_h1;
  const double den = (1.0 - prior) * p_dec_given_h0 + num;
  if (!(den > 0.0)) {
    throw DegenerateLikelihood("bayes_update: decision has zero probability under both hypotheses");
  }
  return std::min(num / den, kBeliefCap);
}

double reset_floor(double pi) { return std::max(kBeliefFloor, pi); }

OperatorState process_decision(OperatorState state, std::size_t region, double allocation, int decision,
                               double now, const OperatorModel& model) {
  if (allocation < 0.0) throw DomainError("process_decision: allocation must be >= 0");
  if (decision != 0 && decision != 1) throw DomainError("process_decision: decision must be 0 or 1");
  if (allocation == 0.0) return state;

  const PerformanceCurve curve = performance(model, state, region, now);
  const double f1 = curve.anomalous(allocation);
  const double f0 = curve.nominal(allocation);
  const double p_h1 = decision == 1 ? f1 : 1.0 - f1;
  const double p_h0 = decision == 1 ? 1.0 - f0 : f0;
  const double posterior = reset_floor(bayes_update(curve.prior, p_h1, p_h0));

  RegionBelief& belief = state.beliefs.at(region);
  belief.current = posterior;
  belief.belief_at_last = posterior;
  belief.last_processed_at = now + allocation;

  if (model.exogenous) {
    state.utilization = hf::utilization_after_task(state.utilization, allocation, 0.0,
                                                   model.exogenous->utilization.sensitivity);
  }
  return state;
}

OperatorState reset_after_detection(OperatorState state, std::size_t region) {
  RegionBelief& belief = state.beliefs.at(region);
  belief.current = kBeliefFloor;
  belief.belief_at_last = kBeliefFloor;
  return state;
}

void advance_clock(OperatorState& state, double now, const hf::SleepSchedule& sleep) {
  state.clock_awake = sleep.hours_awake(now);
  state.time_of_day = sleep.time_of_day(now);
}

}  // namespace cams::op
