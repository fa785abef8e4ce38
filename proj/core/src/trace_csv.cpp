#include "cams/trace_csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cams::io {

namespace {

constexpr std::size_t kFixedColumns = 9;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return num(*v);
  } else {
    return std::to_string(*v);
  }
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& field, std::size_t line) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw std::runtime_error("trace line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

template <typename T>
std::optional<T> parse_optional(const std::string& field, std::size_t line) {
  if (field.empty()) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    return parse_double(field, line);
  } else {
    T v{};
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      throw std::runtime_error("trace line " + std::to_string(line) + ": bad integer '" + field + "'");
    }
    return v;
  }
}

}  // namespace

std::vector<std::string> trace_columns(std::size_t regions) {
  std::vector<std::string> cols{"time",         "event",       "region",      "allocation",        "decision",
                                "queue_length", "motor_time",  "utilization", "task_effectiveness"};
  for (const char* prefix : {"lambda_", "q_", "belief_", "retained_"}) {
    for (std::size_t k = 0; k < regions; ++k) cols.push_back(prefix + std::to_string(k));
  }
  return cols;
}

void write_trace(std::ostream& out, const sim::Scenario& scenario, const std::vector<sim::TraceRecord>& trace) {
  const std::size_t m = scenario.graph.region_count;
  out << "# schema=" << kTraceSchema << '\n';
  out << "# seed=" << scenario.seed << " exogenous_factors=" << (scenario.exogenous_factors ? "on" : "off")
      << '\n';
  for (std::size_t i = 0; i < m; ++i) {
    out << "# travel";
    for (std::size_t j = 0; j < m; ++j) out << ' ' << num(scenario.graph.travel(i, j));
    out << '\n';
  }
  const auto cols = trace_columns(m);
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (const auto& r : trace) {
    out << num(r.time) << ',' << sim::to_string(r.event) << ',' << opt(r.region) << ',' << opt(r.allocation)
        << ',' << opt(r.decision) << ',' << r.queue_length << ',' << opt(r.motor_time) << ','
        << opt(r.utilization) << ',' << opt(r.task_effectiveness);
    for (const auto* v : {&r.statistics, &r.routing, &r.beliefs, &r.retained}) {
      for (double x : *v) out << ',' << num(x);
    }
    out << '\n';
  }
}

std::string trace_to_string(const sim::Scenario& scenario, const std::vector<sim::TraceRecord>& trace) {
  std::ostringstream out;
  write_trace(out, scenario, trace);
  return out.str();
}

TraceFile read_trace(std::istream& in) {
  TraceFile file;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file");
  ++line_no;
  const std::string tag = "# schema=";
  if (line.rfind(tag, 0) != 0) throw std::runtime_error("trace has no schema line");
  file.schema = line.substr(tag.size());
  if (file.schema != kTraceSchema) {
    throw std::runtime_error("trace schema '" + file.schema + "' is not supported (expected '" + kTraceSchema +
                             "')");
  }
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_commas(line);
    if (!header_seen) {
      if (fields.size() < kFixedColumns || (fields.size() - kFixedColumns) % 4 != 0) {
        throw std::runtime_error("trace header has an unexpected column count");
      }
      file.regions = (fields.size() - kFixedColumns) / 4;
      if (fields != trace_columns(file.regions)) throw std::runtime_error("trace header does not match the schema");
      header_seen = true;
      continue;
    }
    if (fields.size() != kFixedColumns + 4 * file.regions) {
      throw std::runtime_error("trace line " + std::to_string(line_no) + ": wrong field count");
    }
    sim::TraceRecord r;
    r.time = parse_double(fields[0], line_no);
    const auto kind = sim::parse_event_kind(fields[1]);
    if (!kind) throw std::runtime_error("trace line " + std::to_string(line_no) + ": unknown event");
    r.event = *kind;
    r.region = parse_optional<std::size_t>(fields[2], line_no);
    r.allocation = parse_optional<double>(fields[3], line_no);
    r.decision = parse_optional<int>(fields[4], line_no);
    r.queue_length = parse_optional<std::size_t>(fields[5], line_no).value_or(0);
    r.motor_time = parse_optional<double>(fields[6], line_no);
    r.utilization = parse_optional<double>(fields[7], line_no);
    r.task_effectiveness = parse_optional<double>(fields[8], line_no);
    std::size_t at = kFixedColumns;
    for (auto* v : {&r.statistics, &r.routing, &r.beliefs, &r.retained}) {
      for (std::size_t k = 0; k < file.regions; ++k) v->push_back(parse_double(fields[at++], line_no));
    }
    file.records.push_back(std::move(r));
  }
  if (!header_seen) throw std::runtime_error("trace has no header row");
  return file;
}

}  // namespace cams::io
