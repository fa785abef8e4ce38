#include <gtest/gtest.h>

#include "cams/errors.hpp"
#include "cams/operator_state.hpp"

using namespace cams;

TEST(OperatorState, BayesUpdate) {
  EXPECT_NEAR(op::bayes_update(0.5, 0.8, 0.2), 0.8, 1e-15);
  EXPECT_THROW(op::bayes_update(0.5, 0.0, 0.0), DegenerateLikelihood);
}

TEST(OperatorState, ResetFloorAndCap) {
  EXPECT_EQ(op::reset_floor(0.3), 0.5);
  EXPECT_EQ(op::reset_floor(0.7), 0.7);
}

TEST(OperatorState, ProcessDecisionFromUnbiasedPrior) {
  const op::OperatorModel model;
  const auto s = op::process_decision(op::OperatorState::unbiased(4, 0.7), 1, 20.0, 1, 50.0, model);
  EXPECT_NEAR(s.beliefs[1].current, 0.9101437525605001, 1e-12);
  EXPECT_EQ(s.beliefs[0].current, 0.5);
}

TEST(OperatorState, NegativeDecisionNeverDropsBelowHalf) {
  const op::OperatorModel model;
  const auto s = op::process_decision(op::OperatorState::unbiased(2, 0.7), 0, 20.0, 0, 50.0, model);
  EXPECT_EQ(s.beliefs[0].current, 0.5);
}

TEST(OperatorState, ResetAfterDetection) {
  auto s = op::OperatorState::unbiased(2, 0.7);
  s.beliefs[1].current = 0.99;
  s = op::reset_after_detection(s, 1);
  EXPECT_EQ(s.beliefs[1].current, 0.5);
}

TEST(OperatorState, PureModelIgnoresRetention) {
  const op::OperatorModel model;
  auto s = op::OperatorState::unbiased(1, 0.7);
  s.beliefs[0].current = 0.9;
  s.beliefs[0].belief_at_last = 0.9;
  s.beliefs[0].last_processed_at = 0.0;
  EXPECT_EQ(op::effective_prior(model, s, 0, 500.0), 0.9);
}
