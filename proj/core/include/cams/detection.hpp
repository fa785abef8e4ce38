#pragma once

#include <cstddef>
#include <vector>

namespace cams::detect {

/// Probabilities are floored at this before taking logs.
inline constexpr double kLikelihoodFloor = 1e-12;

/// Log-likelihood ratio of one binary decision, given the accuracy on an
/// anomalous task (f1) and on a nominal task (f0):
///   decision 1 -> log(f1 / (1 - f0)),  decision 0 -> log((1 - f1) / f0).
double loglik_ratio(int decision, double f1, double f0);

/// Ensemble CUSUM: one nonnegative statistic per region and a shared threshold.
class CusumBank {
 public:
  CusumBank(std::size_t regions, double threshold);

  /// Lambda := max(0, Lambda + increment). Returns true and resets the
  /// statistic to zero when it reaches the threshold.
  bool update(std::size_t region, double increment);

  /// Applies one processed task. Tasks with zero allocation carry no
  /// observation and leave the bank untouched.
  bool observe(std::size_t region, double allocation, int decision, double f1, double f0);

  double statistic(std::size_t region) const { return statistics_.at(region); }
  const std::vector<double>& statistics() const noexcept { return statistics_; }
  double threshold() const noexcept { return threshold_; }
  std::size_t size() const noexcept { return statistics_.size(); }

 private:
  std::vector<double> statistics_;
  double threshold_;
};

}  // namespace cams::detect
