#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cams/sim_engine.hpp"

namespace cams::sim {

struct SweepRow {
  std::uint64_t seed = 0;
  bool all_detected_in_order = false;
  std::size_t false_alarms = 0;
  std::size_t tasks_processed = 0;
  std::vector<std::optional<double>> detection_times;  // first detection of each scheduled anomaly
  std::vector<std::size_t> detections_per_region;
};

SweepRow summarize(const Scenario& scenario, std::uint64_t seed, const RunResult& result);

/// One run per seed in [first, last], spread over `threads` workers. Rows
/// come back in seed order whatever the thread count.
std::vector<SweepRow> run_sweep(const Scenario& scenario, std::uint64_t first, std::uint64_t last,
                                unsigned threads);

void write_sweep_csv(std::ostream& out, const Scenario& scenario, const std::vector<SweepRow>& rows);

}  // namespace cams::sim
