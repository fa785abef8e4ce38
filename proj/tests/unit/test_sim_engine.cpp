#include <gtest/gtest.h>

#include <deque>

#include "cams/errors.hpp"
#include "cams/scenario_io.hpp"
#include "cams/sim_engine.hpp"
#include "cams/trace_csv.hpp"

using namespace cams;

namespace {

sim::Scenario case1() { return io::load_scenario(std::string(CAMS_SCENARIO_DIR) + "/case1.scn"); }

}  // namespace

TEST(SimEngine, SameSeedSameTrace) {
  auto s = case1();
  s.seed = 7;
  EXPECT_EQ(io::trace_to_string(s, sim::run(s).trace), io::trace_to_string(s, sim::run(s).trace));
}

TEST(SimEngine, DifferentSeedsDiffer) {
  auto a = case1();
  auto b = case1();
  a.seed = 1;
  b.seed = 2;
  EXPECT_NE(io::trace_to_string(a, sim::run(a).trace), io::trace_to_string(b, sim::run(b).trace));
}

TEST(SimEngine, TraceIsTimeOrderedAndWithinDuration) {
  const auto s = case1();
  const auto r = sim::run(s);
  ASSERT_FALSE(r.trace.empty());
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i - 1].time, r.trace[i].time);
  EXPECT_LE(r.trace.back().time, s.duration);
}

TEST(SimEngine, PureModelLeavesExogenousColumnsEmpty) {
  for (const auto& row : sim::run(case1()).trace) {
    EXPECT_FALSE(row.utilization.has_value());
    EXPECT_FALSE(row.motor_time.has_value());
  }
}

TEST(SimEngine, InvalidScenarioIsRejected) {
  auto s = case1();
  s.graph.deadlines[0] = -1.0;
  EXPECT_THROW(sim::run(s), ScenarioError);
}

TEST(SimEngine, DropPending) {
  std::deque<sim::Task> q{{0, 1.0, false}, {1, 2.0, true}, {2, 3.0, false}};
  sim::drop_pending(q);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q.front().region, 0u);
  std::deque<sim::Task> empty;
  sim::drop_pending(empty);
  EXPECT_TRUE(empty.empty());
}

TEST(SimEngine, DecisionSamplingExtremes) {
  RngStream rng(1, "decisions");
  EXPECT_EQ(sim::simulate_operator_decision(rng, true, 1.0), 1);
  EXPECT_EQ(sim::simulate_operator_decision(rng, false, 1.0), 0);
}

TEST(SimEngine, EventNamesRoundTrip) {
  for (auto e : {sim::EventKind::enqueue, sim::EventKind::allocate, sim::EventKind::decide, sim::EventKind::detect,
                 sim::EventKind::rest, sim::EventKind::route}) {
    EXPECT_EQ(sim::parse_event_kind(sim::to_string(e)), e);
  }
}
