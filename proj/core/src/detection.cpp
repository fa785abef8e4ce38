#include "cams/detection.hpp"

#include <algorithm>
#include <cmath>

#include "cams/errors.hpp"
#include "cams/logging.hpp"

namespace cams::detect {

namespace {

double floored(double p) {
  if (p < kLikelihoodFloor) {
    logger().debug("likelihood {} floored to {}", p, kLikelihoodFloor);
    return kLikelihoodFloor;
  }
  return p;
}

}  // namespace

double loglik_ratio(int decision, double f1, double f0) {
  if (!(f1 >= 0.0 && f1 <= 1.0) || !(f0 >= 0.0 && f0 <= 1.0)) {
    throw DegenerateLikelihood("loglik_ratio: accuracies must lie in [0,1]");
  }
  if (decision == 1) return std::log(floored(f1)) - std::log(floored(1.0 - f0));
  if (decision == 0) return std::log(floored(1.0 - f1)) - std::log(floored(f0));
  throw DomainError("loglik_ratio: decision must be 0 or 1");
}

CusumBank::CusumBank(std::size_t regions, double threshold)
    : statistics_(regions, 0.0), threshold_(threshold) {
  if (!(threshold > 0.0)) throw DomainError("CusumBank: threshold must be > 0");
}

bool CusumBank::update(std::size_t region, double increment) {
  double& lambda = statistics_.at(region);
  lambda = std::max(0.0, lambda + increment);
  if (lambda >= threshold_) {
    lambda = 0.0;
    return true;
  }
  return false;
}

bool CusumBank::observe(std::size_t region, double allocation, int decision, double f1, double f0) {
  if (!(allocation > 0.0)) return false;
  return update(region, loglik_ratio(decision, f1, f0));
}

}  // namespace cams::detect
