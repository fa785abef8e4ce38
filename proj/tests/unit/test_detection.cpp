#include <gtest/gtest.h>

#include <cmath>

#include "cams/detection.hpp"
#include "cams/errors.hpp"

using namespace cams;

TEST(Detection, LogLikelihoodRatio) {
  EXPECT_NEAR(detect::loglik_ratio(1, 0.8, 0.8), std::log(4.0), 1e-15);
  EXPECT_NEAR(detect::loglik_ratio(0, 0.9, 0.7), -1.9459101490553135, 1e-15);
  EXPECT_NEAR(detect::loglik_ratio(1, 0.8, 1.0), std::log(0.8 / detect::kLikelihoodFloor), 1e-9);
  EXPECT_THROW(detect::loglik_ratio(1, 1.2, 0.5), DegenerateLikelihood);
}

TEST(Detection, CusumClipsAtZeroAndFires) {
  detect::CusumBank bank(2, 5.0);
  EXPECT_FALSE(bank.update(0, -3.0));
  EXPECT_EQ(bank.statistic(0), 0.0);
  EXPECT_FALSE(bank.update(0, 4.0));
  EXPECT_TRUE(bank.update(0, 1.5));
  EXPECT_EQ(bank.statistic(1), 0.0);
}

TEST(Detection, ZeroAllocationIsIgnored) {
  detect::CusumBank bank(1, 5.0);
  EXPECT_FALSE(bank.observe(0, 0.0, 1, 0.9, 0.9));
  EXPECT_EQ(bank.statistic(0), 0.0);
}
