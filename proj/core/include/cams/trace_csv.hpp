#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cams/sim_engine.hpp"

namespace cams::io {

/// Version tag on the first line of every trace. Bump when columns change.
inline constexpr const char* kTraceSchema = "cams-trace/1";

/// Column names in file order for a run over `regions` regions.
std::vector<std::string> trace_columns(std::size_t regions);

/// Writes the schema line, the travel matrix as provenance comments, the
/// header row and one row per record. Numbers use 9 significant digits;
/// absent values are empty fields.
void write_trace(std::ostream& out, const sim::Scenario& scenario, const std::vector<sim::TraceRecord>& trace);
std::string trace_to_string(const sim::Scenario& scenario, const std::vector<sim::TraceRecord>& trace);

struct TraceFile {
  std::string schema;
  std::size_t regions = 0;
  std::vector<sim::TraceRecord> records;
};

/// Reads a trace written by write_trace. Throws std::runtime_error on a
/// missing or different schema tag, or on malformed rows.
TraceFile read_trace(std::istream& in);

}  // namespace cams::io
