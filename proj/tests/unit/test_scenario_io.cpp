#include <gtest/gtest.h>

#include <sstream>

#include "cams/errors.hpp"
#include "cams/scenario_io.hpp"
#include "cams/sim_engine.hpp"
#include "cams/trace_csv.hpp"

using namespace cams;

namespace {

const char* kMinimal = R"([graph]
travel = 0 1 2
travel = 1 0 3
travel = 2 3 0
collection = 1 1 1
[regions]
weights = 1 1 1
deadlines = 10 10 10
)";

std::string first_problem(const std::string& text) {
  try {
    io::parse_scenario_text(text);
  } catch (const ScenarioError& e) {
    return e.problems().empty() ? "" : e.problems().front();
  }
  return "";
}

}  // namespace

TEST(ScenarioIo, MinimalFileUsesDefaults) {
  const auto s = io::parse_scenario_text(kMinimal);
  EXPECT_EQ(s.graph.region_count, 3u);
  EXPECT_EQ(s.algorithm.horizon, 5);
  EXPECT_TRUE(s.graph.has_edge(0, 2));
}

TEST(ScenarioIo, RoundTripIsExact) {
  for (const char* name : {"case1.scn", "case2.scn"}) {
    const auto s = io::load_scenario(std::string(CAMS_SCENARIO_DIR) + "/" + name);
    const auto text = io::scenario_to_string(s);
    const auto back = io::parse_scenario_text(text);
    EXPECT_EQ(back, s) << name;
    EXPECT_EQ(io::scenario_to_string(back), text) << name;
  }
}

TEST(ScenarioIo, RaggedTravelMatrix) {
  const std::string text = std::string(kMinimal) + "[graph]\n";
  EXPECT_NE(first_problem("[graph]\ntravel = 0 1 2 3\ntravel = 1 0 3 4\ntravel = 2 3 0 5\ncollection = 1 1 1\n"
                          "[regions]\nweights = 1 1 1\ndeadlines = 1 1 1\n")
                .find("dimension"),
            std::string::npos);
}

TEST(ScenarioIo, NegativeDeadlineNamesKey) {
  std::string text = kMinimal;
  text.replace(text.find("deadlines = 10"), 14, "deadlines = -1");
  EXPECT_NE(first_problem(text).find("deadlines"), std::string::npos);
}

TEST(ScenarioIo, FmmcIsUnsupported) {
  const std::string msg = first_problem(std::string(kMinimal) + "[algorithm]\nrouting = fmmc\n");
  EXPECT_NE(msg.find("fmmc"), std::string::npos);
}

TEST(ScenarioIo, UnknownKeyCarriesLineNumber) {
  const std::string msg = first_problem(std::string(kMinimal) + "colour = blue\n");
  EXPECT_NE(msg.find("line 9"), std::string::npos) << msg;
}

TEST(ScenarioIo, AsymmetricTravel) {
  std::string text = kMinimal;
  text.replace(text.find("travel = 1 0 3"), 14, "travel = 5 0 3");
  EXPECT_THROW(io::parse_scenario_text(text), ScenarioError);
}

TEST(TraceCsv, WriteThenReadPreservesRecords) {
  auto s = io::parse_scenario_text(kMinimal);
  s.duration = 100;
  const auto r = sim::run(s);
  std::istringstream in(io::trace_to_string(s, r.trace));
  const auto file = io::read_trace(in);
  EXPECT_EQ(file.schema, io::kTraceSchema);
  EXPECT_EQ(file.regions, 3u);
  ASSERT_EQ(file.records.size(), r.trace.size());
  EXPECT_EQ(file.records.front().event, r.trace.front().event);
}

TEST(TraceCsv, RejectsOtherSchema) {
  std::istringstream in("# schema=cams-trace/0\n");
  EXPECT_THROW(io::read_trace(in), std::runtime_error);
}
