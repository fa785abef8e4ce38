#pragma once

#include <spdlog/spdlog.h>

namespace cams {

/// Shared logger for the library. Level is read once from CAMS_LOG_LEVEL
/// (trace, debug, info, warn, error, off); default is warn.
spdlog::logger& logger();

}  // namespace cams
