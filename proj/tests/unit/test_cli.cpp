#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

int cli(const std::string& args) {
  const std::string cmd = std::string(CAMS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::string kScenarios = CAMS_SCENARIO_DIR;

}  // namespace

TEST(Cli, UnknownFlagExitsTwo) { EXPECT_EQ(cli("run " + kScenarios + "/case1.scn --bogus"), 2); }

TEST(Cli, MissingSubcommandExitsTwo) { EXPECT_EQ(cli(""), 2); }

TEST(Cli, RunIsDeterministicAndReportRenders) {
  const auto dir = std::filesystem::temp_directory_path() / "cams_cli_test";
  std::filesystem::create_directories(dir);
  ASSERT_EQ(cli("run " + kScenarios + "/case2.scn --seed 7 --out " + (dir / "a.csv").string()), 0);
  ASSERT_EQ(cli("run " + kScenarios + "/case2.scn --seed 7 --out " + (dir / "b.csv").string()), 0);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  ASSERT_EQ(cli("report " + (dir / "a.csv").string() + " --out-dir " + (dir / "svg").string()), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "svg" / "utilization.svg"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, SweepWritesOneRowPerSeed) {
  const auto out = std::filesystem::temp_directory_path() / "cams_sweep_test.csv";
  ASSERT_EQ(cli("sweep " + kScenarios + "/case1.scn --seeds 1..3 --threads 2 --out " + out.string()), 0);
  std::istringstream rows(slurp(out));
  std::string line;
  int n = 0;
  while (std::getline(rows, line)) ++n;
  EXPECT_EQ(n, 4);
  std::filesystem::remove(out);
}

TEST(Cli, BadSeedRangeIsRejected) { EXPECT_NE(cli("sweep " + kScenarios + "/case1.scn --seeds 5..2"), 0); }
