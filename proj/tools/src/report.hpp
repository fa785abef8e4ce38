#pragma once

#include <filesystem>
#include <vector>

#include "cams/trace_csv.hpp"

namespace cams::tools {

/// Writes one SVG line chart per panel into `out_dir` and returns the paths.
std::vector<std::filesystem::path> write_report(const io::TraceFile& trace, const std::filesystem::path& out_dir);

}  // namespace cams::tools
