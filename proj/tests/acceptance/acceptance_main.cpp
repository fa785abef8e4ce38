#include <CLI11.hpp>
#include <iostream>
#include <set>

#include "cams/logging.hpp"
#include "cams/validation/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1 to 9"};
  std::string scenario_dir = CAMS_SCENARIO_DIR;
  std::size_t seeds = 100;
  std::vector<int> known;
  app.add_option("--scenarios", scenario_dir, "Directory holding case1.scn and case2.scn");
  app.add_option("--seeds", seeds, "Seeds per Monte Carlo criterion");
  app.add_option("--known-failure", known,
                 "Criterion expected to fail; exit status is 0 when exactly these fail");
  CLI11_PARSE(app, argc, argv);
  cams::logger().set_level(spdlog::level::err);

  std::set<int> failed;
  for (const auto& r : cams::validation::run_acceptance({scenario_dir, seeds})) {
    std::cout << cams::validation::format_result(r) << std::endl;
    if (!r.passed) failed.insert(r.id);
  }
  const std::set<int> expected(known.begin(), known.end());
  std::cout << failed.size() << " of 9 criteria failed";
  if (!expected.empty()) {
    std::cout << (failed == expected ? " (matches the known-failure list)" : " (differs from the known-failure list)");
  }
  std::cout << '\n';
  return failed == expected ? 0 : 1;
}
