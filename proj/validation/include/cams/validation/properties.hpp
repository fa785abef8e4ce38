#pragma once

#include <string>
#include <vector>

namespace cams::validation {

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Reference values and property checks for every module, each against an
/// independent computation. Fast: meant to run on every `cams validate`.
std::vector<PropertyResult> run_properties();

}  // namespace cams::validation
