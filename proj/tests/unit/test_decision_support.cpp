#include <gtest/gtest.h>

#include <numeric>

#include "cams/decision_support.hpp"
#include "cams/errors.hpp"
#include "cams/knapsack.hpp"
#include "cams/validation/problems.hpp"

using namespace cams;

TEST(DecisionSupport, ActionGridAppendsDeadline) {
  const auto g = dss::action_grid(1.2, 0.5);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_DOUBLE_EQ(g.back(), 1.2);
}

TEST(DecisionSupport, CaseStudyAllocationIsFrozen) {
  const auto p = validation::case_study_horizon_problem(5);
  const auto s = dss::solve_horizon(p);
  EXPECT_DOUBLE_EQ(s.allocation, 16.5);
  EXPECT_NEAR(s.value, 0.862475525112, 1e-11);
  EXPECT_LE(s.allocation, p.queue.front().deadline);
}

TEST(DecisionSupport, EmptyQueueIsRejected) {
  auto p = validation::case_study_horizon_problem(5);
  p.queue.clear();
  EXPECT_THROW(dss::solve_horizon(p), DomainError);
}

TEST(DecisionSupport, CriticalBeliefTakesDeadline) {
  const auto p = validation::case_study_horizon_problem(5);
  EXPECT_EQ(dss::allocate(p, 0.9, 0.8), 40.0);
}

TEST(DecisionSupport, QueueDynamicsFloorAtOne) {
  const auto p = validation::case_study_horizon_problem(5);
  EXPECT_EQ(dss::next_queue_length(p, 1.0, 0.0), 1.0);
  EXPECT_EQ(dss::next_queue_length(p, 60.0, 0.0), p.grids.queue_cap);
}

TEST(Knapsack, ZeroBudgetAllocatesNothing) {
  std::vector<dss::SigmoidItem> items{dss::make_sigmoid_item(validation::logistic_utility(1.0, 5.0), 1.0, 20.0)};
  const auto s = dss::knapsack_sigmoid(items, 0.0);
  EXPECT_EQ(s.allocations, std::vector<double>{0.0});
}

TEST(Knapsack, NeverExceedsBudget) {
  std::vector<dss::SigmoidItem> items;
  for (double b : {3.0, 6.0, 9.0}) items.push_back(dss::make_sigmoid_item(validation::logistic_utility(1.0, b), 1.0, 30.0));
  const auto s = dss::knapsack_sigmoid(items, 10.0);
  EXPECT_LE(std::accumulate(s.allocations.begin(), s.allocations.end(), 0.0), 10.0 + 1e-9);
}

TEST(Knapsack, PseudoInverseFallsBackToZeroAbovePeak) {
  const auto item = dss::make_sigmoid_item(validation::logistic_utility(1.0, 5.0), 1.0, 20.0);
  EXPECT_EQ(dss::sigmoid_pseudo_inverse(item, 2.0 * item.peak_slope()), 0.0);
}
