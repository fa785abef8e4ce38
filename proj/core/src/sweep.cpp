#include "cams/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "cams/errors.hpp"

namespace cams::sim {

SweepRow summarize(const Scenario& scenario, std::uint64_t seed, const RunResult& result) {
  SweepRow row;
  row.seed = seed;
  row.all_detected_in_order = result.all_detected_in_order(scenario);
  row.false_alarms = result.false_alarms();
  row.tasks_processed = result.tasks_processed;
  row.detection_times.resize(scenario.anomalies.size());
  row.detections_per_region.assign(scenario.graph.region_count, 0);
  for (const Detection& d : result.detections) {
    ++row.detections_per_region[d.region];
    if (d.anomaly && !row.detection_times[*d.anomaly]) row.detection_times[*d.anomaly] = d.time;
  }
  return row;
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, std::uint64_t first, std::uint64_t last,
                                unsigned threads) {
  if (last < first) throw DomainError("run_sweep: empty seed range");
  const std::size_t count = static_cast<std::size_t>(last - first) + 1;
  std::vector<SweepRow> rows(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        Scenario copy = scenario;
        copy.seed = first + i;
        rows[i] = summarize(copy, copy.seed, run(copy));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_sweep_csv(std::ostream& out, const Scenario& scenario, const std::vector<SweepRow>& rows) {
  out << "seed,all_detected_in_order,false_alarms,tasks_processed";
  for (std::size_t i = 0; i < scenario.anomalies.size(); ++i) out << ",detect_time_" << i;
  for (std::size_t k = 0; k < scenario.graph.region_count; ++k) out << ",detections_region_" << k;
  out << '\n';
  char buf[32];
  for (const auto& r : rows) {
    out << r.seed << ',' << (r.all_detected_in_order ? 1 : 0) << ',' << r.false_alarms << ',' << r.tasks_processed;
    for (const auto& t : r.detection_times) {
      out << ',';
      if (t) {
        std::snprintf(buf, sizeof buf, "%.9g", *t);
        out << buf;
      }
    }
    for (auto c : r.detections_per_region) out << ',' << c;
    out << '\n';
  }
}

}  // namespace cams::sim
