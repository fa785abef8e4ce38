#include "cams/ddm.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cams/errors.hpp"

namespace cams::ddm {

void DdmParams::validate() const {
  if (!(drift_magnitude > 0.0)) throw DomainError("drift_magnitude must be > 0");
  if (!(diffusion > 0.0)) throw DomainError("diffusion must be > 0");
  if (free_response_threshold < 0.0) throw DomainError("free_response_threshold must be >= 0");
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double initial_evidence(double prior, const DdmParams& params) {
  if (!(prior > 0.0 && prior < 1.0)) {
    throw DomainError("initial_evidence: prior must lie in (0,1), got " + std::to_string(prior));
  }
  const double sigma2 = params.diffusion * params.diffusion;
  return sigma2 * std::log(prior / (1.0 - prior)) / (2.0 * params.drift_magnitude);
}

double accuracy_upper(double t, double x0, const DdmParams& params) {
  if (!(t > 0.0)) throw DomainError("accuracy_upper: t must be > 0");
  const double mu = params.drift_magnitude;
  const double z = (params.interrogation_threshold - mu * t - x0) / (params.diffusion * std::sqrt(t));
  // 1 - Phi(z) == Phi(-z); the latter keeps precision in the upper tail.
  return normal_cdf(-z);
}

double accuracy_lower(double t, double x0, const DdmParams& params) {
  if (!(t > 0.0)) throw DomainError("accuracy_lower: t must be > 0");
  const double mu = params.drift_magnitude;
  const double z = (params.interrogation_threshold + mu * t - x0) / (params.diffusion * std::sqrt(t));
  return normal_cdf(z);
}

double accuracy_upper_extended(double t, double x0, const DdmParams& params) {
  if (t > 0.0) return accuracy_upper(t, x0, params);
  const double nu = params.interrogation_threshold;
  if (x0 > nu) return 1.0;
  if (x0 < nu) return 0.0;
  return 0.5;
}

double accuracy_lower_extended(double t, double x0, const DdmParams& params) {
  if (t > 0.0) return accuracy_lower(t, x0, params);
  const double nu = params.interrogation_threshold;
  if (x0 < nu) return 1.0;
  if (x0 > nu) return 0.0;
  return 0.5;
}

double expected_accuracy(double weight_h0, double f0, double f1) {
  if (weight_h0 < 0.0 || weight_h0 > 1.0) throw DomainError("expected_accuracy: weight outside [0,1]");
  return weight_h0 * f0 + (1.0 - weight_h0) * f1;
}

double free_response_expected_time(double x0, const DdmParams& params) {
  const double eta = params.free_response_threshold;
  if (eta == 0.0 && x0 == 0.0) return 0.0;
  if (!(std::abs(x0) < eta)) {
    throw DomainError("free_response_expected_time: |x0| must be below the threshold");
  }
  const double mu = params.drift_magnitude;
  const double sigma2 = params.diffusion * params.diffusion;
  const double a = 2.0 * eta * mu / sigma2;
  const double first = (eta / mu) * std::tanh(mu * eta / sigma2);
  // e^a - e^-a == 2 sinh(a); -expm1(-b) == 1 - e^-b.
  const double bias = 2.0 * eta * (-std::expm1(-2.0 * x0 * mu / sigma2)) / (mu * 2.0 * std::sinh(a));
  return first + bias - x0 / mu;
}

double bayes_risk_residual(double eta, const DdmParams& params) {
  const double mu = params.drift_magnitude;
  const double sigma2 = params.diffusion * params.diffusion;
  const double ratio = params.error_cost / params.delay_cost;
  const double a = 2.0 * mu * eta / sigma2;
  return ratio * 2.0 * mu * mu / sigma2 - 4.0 * mu * eta / sigma2 - 2.0 * std::sinh(a);
}

double bayes_risk_threshold(const DdmParams& params, ThresholdMode mode) {
  if (!(params.delay_cost > 0.0) || !(params.error_cost > 0.0)) {
    throw DomainError("bayes_risk_threshold: cost rates must be > 0");
  }
  const double limiting = params.drift_magnitude * params.error_cost / (4.0 * params.delay_cost);
  if (mode == ThresholdMode::limiting) return limiting;

  double lo = 0.0;
  double hi = limiting;
  double g_lo = bayes_risk_residual(lo, params);
  const double g_hi = bayes_risk_residual(hi, params);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    throw NumericalError("bayes_risk_threshold: root not bracketed on [0, " + std::to_string(hi) +
                         "], residuals " + std::to_string(g_lo) + " and " + std::to_string(g_hi));
  }
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = bayes_risk_residual(mid, params);
    if (g_mid == 0.0) return mid;
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace cams::ddm
