#include <gtest/gtest.h>

#include <cmath>

#include "cams/ddm.hpp"
#include "cams/errors.hpp"

using namespace cams;

TEST(Ddm, InitialEvidenceAtPriorPointEight) {
  EXPECT_NEAR(ddm::initial_evidence(0.8, {}), 2.3104906018664844, 1e-12);
  EXPECT_EQ(ddm::initial_evidence(0.5, {}), 0.0);
}

TEST(Ddm, InitialEvidenceRejectsDegeneratePriors) {
  EXPECT_THROW(ddm::initial_evidence(0.0, {}), DomainError);
  EXPECT_THROW(ddm::initial_evidence(1.0, {}), DomainError);
}

TEST(Ddm, AccuracyAtTenUnits) {
  EXPECT_NEAR(ddm::accuracy_upper(10.0, 0.0, {}), 0.8286091444, 1e-9);
  EXPECT_NEAR(ddm::accuracy_lower(10.0, 0.0, {}), 0.8286091444, 1e-9);
}

TEST(Ddm, BiasedStartShiftsAccuracies) {
  const double x0 = ddm::initial_evidence(0.8, {});
  EXPECT_NEAR(ddm::accuracy_upper(10.0, x0, {}), 0.953455598407636, 1e-12);
  EXPECT_NEAR(ddm::accuracy_lower(10.0, x0, {}), 0.5863018128095616, 1e-12);
}

TEST(Ddm, AccuracyRejectsNonpositiveTime) {
  EXPECT_THROW(ddm::accuracy_upper(0.0, 0.0, {}), DomainError);
  EXPECT_THROW(ddm::accuracy_lower(-1.0, 0.0, {}), DomainError);
}

TEST(Ddm, AccuracyTendsToOneAndToPriorSide) {
  EXPECT_GT(ddm::accuracy_upper(1e4, 0.0, {}), 1.0 - 1e-12);
  EXPECT_NEAR(ddm::accuracy_upper(1e-12, 1.0, {}), 1.0, 1e-12);
  EXPECT_NEAR(ddm::accuracy_lower(1e-12, 1.0, {}), 0.0, 1e-12);
}

TEST(Ddm, ExpectedAccuracyMixes) {
  EXPECT_DOUBLE_EQ(ddm::expected_accuracy(0.25, 0.6, 1.0), 0.25 * 0.6 + 0.75 * 1.0);
}

TEST(Ddm, FreeResponseTime) {
  ddm::DdmParams p;
  p.free_response_threshold = 3.0;
  EXPECT_NEAR(ddm::free_response_expected_time(1.0, p), 5.363165547021344, 1e-12);
  EXPECT_NEAR(ddm::free_response_expected_time(0.0, p), 10.0 * std::tanh(0.9), 1e-12);
  EXPECT_THROW(ddm::free_response_expected_time(3.0, p), DomainError);
}

TEST(Ddm, BayesThreshold) {
  ddm::DdmParams p;
  EXPECT_DOUBLE_EQ(ddm::bayes_risk_threshold(p, ddm::ThresholdMode::limiting), 3.0);
  const double eta = ddm::bayes_risk_threshold(p, ddm::ThresholdMode::exact);
  EXPECT_NEAR(ddm::bayes_risk_residual(eta, p), 0.0, 1e-10);
}
