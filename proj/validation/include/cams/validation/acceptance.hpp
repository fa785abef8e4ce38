#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cams::validation {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  // 0 means no runtime limit
};

struct AcceptanceConfig {
  std::filesystem::path scenario_dir;  // holds case1.scn and case2.scn
  std::size_t seeds = 100;
};

/// Runs criteria 1 to 9 in order. Criterion 9 audits the traces produced
/// by criteria 6 to 8, so the whole list is run together.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config);

/// "[PASS] 3 CUSUM operating characteristic (1.2 s): detail"
std::string format_result(const CriterionResult& result);

}  // namespace cams::validation
