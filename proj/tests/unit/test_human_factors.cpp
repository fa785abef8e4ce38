#include <gtest/gtest.h>

#include <cmath>

#include "cams/errors.hpp"
#include "cams/human_factors.hpp"

using namespace cams;

TEST(HumanFactors, TaskEffectivenessRestedAtPeak) {
  EXPECT_NEAR(hf::task_effectiveness(0.0, 18.0, {}), 1.07, 1e-12);
}

TEST(HumanFactors, TaskEffectivenessFallsWithTimeAwake) {
  EXPECT_LT(hf::task_effectiveness(20.0, 18.0, {}), hf::task_effectiveness(2.0, 18.0, {}));
}

TEST(HumanFactors, EffectiveDrift) {
  EXPECT_NEAR(hf::effective_drift(ddm::DdmParams{}, 1.0), 0.3, 1e-10);
  EXPECT_LT(hf::effective_drift(ddm::DdmParams{}, 1.07), 0.3);
  EXPECT_THROW(hf::effective_drift(ddm::DdmParams{}, 0.5), FatigueExhaustion);
}

TEST(HumanFactors, Utilization) {
  EXPECT_NEAR(hf::utilization_after_task(0.0, 100.0, 0.0, 100.0), 0.6321205588285577, 1e-15);
  EXPECT_NEAR(hf::utilization_after_task(0.5, 20.0, 30.0, 100.0), 0.4375528908254012, 1e-15);
}

TEST(HumanFactors, MotorTime) {
  hf::UtilizationParams u;
  EXPECT_NEAR(hf::motor_time(0.0, 1.0, u), 45.0, 1e-12);
  EXPECT_NEAR(hf::motor_time(0.7, 1.0, u), 1.18, 1e-12);
  EXPECT_EQ(hf::motor_time(0.587, 1.0, u), 0.0);
}

TEST(HumanFactors, RestTime) {
  hf::UtilizationParams u;
  EXPECT_NEAR(hf::rest_time(0.9, u), 100.0 * std::log(0.9 / 0.7), 1e-12);
  EXPECT_EQ(hf::rest_time(0.8, u), 0.0);
}

TEST(HumanFactors, Retention) {
  hf::RetentionParams r;
  EXPECT_EQ(hf::retention(0.0, r), 1.0);
  EXPECT_NEAR(hf::retention(5.0, r), 0.3442856786153692, 1e-13);
  EXPECT_NEAR(hf::retained_belief(0.9, 5.0, r), 0.6805874847443159, 1e-13);
}

TEST(HumanFactors, UnifiedAccuracyIsChanceDuringMotorWait) {
  hf::OperatorCondition c{0.0, 1.0, 0.0, 0.5};
  EXPECT_DOUBLE_EQ(hf::unified_accuracy(hf::Hypothesis::anomalous, 10.0, c, {}, {}, {}), 0.5);
  EXPECT_GT(hf::unified_accuracy(hf::Hypothesis::anomalous, 60.0, c, {}, {}, {}), 0.5);
}
