#pragma once

// Drift-diffusion model of a two-alternative decision.
//
// Evidence evolves as dx = mu dt + sigma dW from x(0) = x0. Under the
// interrogation paradigm the decision is read off x(t) against a single
// threshold nu; under free response it is made when x first leaves
// (-eta, eta).
//
// Sign convention used throughout the project: the anomalous hypothesis is
// the positive-drift one and is decided when evidence ends above nu. The
// nominal hypothesis has drift -mu and is decided below nu. A positive
// initial evidence therefore encodes a prior leaning towards "anomalous".

namespace cams::ddm {

struct DdmParams {
  double drift_magnitude = 0.3;        // mu > 0
  double diffusion = 1.0;              // sigma > 0
  double interrogation_threshold = 0;  // nu
  double free_response_threshold = 0;  // eta >= 0
  double delay_cost = 1.0;             // xi1, cost per unit time
  double error_cost = 40.0;            // xi2, cost per error

  /// Throws DomainError when drift or diffusion is not strictly positive.
  void validate() const;

  friend bool operator==(const DdmParams&, const DdmParams&) = default;
};

enum class ThresholdMode { exact, limiting };

/// Standard normal CDF via erfc; absolute error well below 1e-12.
double normal_cdf(double x) noexcept;

/// Standard normal density.
double normal_pdf(double x) noexcept;

/// Initial evidence encoding the prior odds of the anomalous hypothesis:
/// x0 = sigma^2 log(prior / (1 - prior)) / (2 mu).
double initial_evidence(double prior, const DdmParams& params);

/// Probability that x(t) ends above nu when the drift is +mu, i.e. the
/// accuracy on an anomalous task: 1 - Phi((nu - mu t - x0) / (sigma sqrt t)).
double accuracy_upper(double t, double x0, const DdmParams& params);

/// Probability that x(t) ends below nu when the drift is -mu, i.e. the
/// accuracy on a nominal task: Phi((nu + mu t - x0) / (sigma sqrt t)).
double accuracy_lower(double t, double x0, const DdmParams& params);

/// accuracy_upper / accuracy_lower extended to t <= 0 by their t -> 0+
/// limit: 0.5 when x0 == nu, otherwise 0 or 1 by the side of nu x0 is on.
double accuracy_upper_extended(double t, double x0, const DdmParams& params);
double accuracy_lower_extended(double t, double x0, const DdmParams& params);

/// Convex combination weight_h0 * f0 + (1 - weight_h0) * f1. Callers pass the
/// probability of the hypothesis whose accuracy is f0.
double expected_accuracy(double weight_h0, double f0, double f1);

/// Expected first-passage time of the free-response process through +-eta.
double free_response_expected_time(double x0, const DdmParams& params);

/// Threshold minimizing the Bayes risk xi1 * T_decision + xi2 * P_error.
/// `exact` solves the transcendental optimality condition by bisection on
/// [0, mu xi2 / (4 xi1)]; `limiting` returns that upper end directly.
double bayes_risk_threshold(const DdmParams& params, ThresholdMode mode);

/// Left-hand side of the Bayes-risk optimality condition at eta. Exposed for
/// residual checks.
double bayes_risk_residual(double eta, const DdmParams& params);

}  // namespace cams::ddm
