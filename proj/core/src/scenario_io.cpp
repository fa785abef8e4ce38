#include "cams/scenario_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "cams/errors.hpp"

namespace cams::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::optional<double> to_double(const std::string& tok) {
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

template <typename Int>
std::optional<Int> to_integer(const std::string& tok) {
  Int v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Builder {
  sim::Scenario scenario;
  std::vector<std::vector<double>> travel;
  std::vector<std::vector<double>> adjacency;
  std::vector<std::string> errors;
  int line = 0;

  void error(const std::string& what) { errors.push_back("line " + std::to_string(line) + ": " + what); }
};

using Handler = std::function<void(Builder&, const std::string& key, const std::string& value)>;

template <typename Access>
Handler number(Access access) {
  return [access](Builder& b, const std::string& key, const std::string& value) {
    if (auto v = to_double(value)) {
      access(b.scenario) = *v;
    } else {
      b.error(key + ": expected a number, got '" + value + "'");
    }
  };
}

template <typename Access>
Handler vector_of(Access access) {
  return [access](Builder& b, const std::string& key, const std::string& value) {
    std::vector<double> values;
    for (const auto& tok : split_ws(value)) {
      auto v = to_double(tok);
      if (!v) {
        b.error(key + ": expected numbers, got '" + tok + "'");
        return;
      }
      values.push_back(*v);
    }
    access(b.scenario) = std::move(values);
  };
}

Handler matrix_row(std::vector<std::vector<double>> Builder::*rows) {
  return [rows](Builder& b, const std::string& key, const std::string& value) {
    std::vector<double> row;
    for (const auto& tok : split_ws(value)) {
      auto v = to_double(tok);
      if (!v) {
        b.error(key + ": expected numbers, got '" + tok + "'");
        return;
      }
      row.push_back(*v);
    }
    (b.*rows).push_back(std::move(row));
  };
}

Handler flag(std::function<bool&(sim::Scenario&)> access) {
  return [access](Builder& b, const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "yes") {
      access(b.scenario) = true;
    } else if (value == "off" || value == "false" || value == "no") {
      access(b.scenario) = false;
    } else {
      b.error(key + ": expected on or off, got '" + value + "'");
    }
  };
}

#define CAMS_FIELD(expr) [](sim::Scenario& s) -> auto& { return s.expr; }

const std::map<std::string, std::map<std::string, Handler>>& grammar() {
  static const std::map<std::string, std::map<std::string, Handler>> table = {
      {"graph",
       {
           {"travel", matrix_row(&Builder::travel)},
           {"adjacency", matrix_row(&Builder::adjacency)},
           {"collection", vector_of(CAMS_FIELD(graph.collection))},
       }},
      {"regions",
       {
           {"weights", vector_of(CAMS_FIELD(graph.weights))},
           {"deadlines", vector_of(CAMS_FIELD(graph.deadlines))},
       }},
      {"operator",
       {
           {"drift", number(CAMS_FIELD(ddm.drift_magnitude))},
           {"diffusion", number(CAMS_FIELD(ddm.diffusion))},
           {"interrogation_threshold", number(CAMS_FIELD(ddm.interrogation_threshold))},
           {"free_response_threshold", number(CAMS_FIELD(ddm.free_response_threshold))},
           {"delay_cost", number(CAMS_FIELD(ddm.delay_cost))},
           {"error_cost", number(CAMS_FIELD(ddm.error_cost))},
           {"initial_utilization", number(CAMS_FIELD(initial_utilization))},
           {"sensitivity", number(CAMS_FIELD(human_factors.utilization.sensitivity))},
           {"utilization_optimal", number(CAMS_FIELD(human_factors.utilization.optimal))},
           {"utilization_threshold", number(CAMS_FIELD(human_factors.utilization.threshold))},
           {"motor_polynomial",
            [](Builder& b, const std::string& key, const std::string& value) {
              std::vector<hf::MotorTerm> terms;
              for (const auto& tok : split_ws(value)) {
                const auto colon = tok.find(':');
                std::optional<double> c;
                std::optional<int> p;
                if (colon != std::string::npos) {
                  c = to_double(tok.substr(0, colon));
                  p = to_integer<int>(tok.substr(colon + 1));
                }
                if (!c || !p || *p < 0) {
                  b.error(key + ": expected coefficient:power terms, got '" + tok + "'");
                  return;
                }
                terms.push_back({*c, *p});
              }
              b.scenario.human_factors.utilization.motor_poly = std::move(terms);
            }},
           {"retention_w1", number(CAMS_FIELD(human_factors.retention.w1))},
           {"retention_w2", number(CAMS_FIELD(human_factors.retention.w2))},
           {"retention_floor", number(CAMS_FIELD(human_factors.retention.floor))},
           {"retention_tau1", number(CAMS_FIELD(human_factors.retention.tau1))},
           {"retention_tau2", number(CAMS_FIELD(human_factors.retention.tau2))},
           {"retention_scale", number(CAMS_FIELD(human_factors.retention.time_scale))},
           {"safte_reservoir", number(CAMS_FIELD(human_factors.safte.reservoir_capacity))},
           {"safte_drain", number(CAMS_FIELD(human_factors.safte.drain_rate))},
           {"safte_amp1", number(CAMS_FIELD(human_factors.safte.amp1))},
           {"safte_amp2", number(CAMS_FIELD(human_factors.safte.amp2))},
           {"safte_beta", number(CAMS_FIELD(human_factors.safte.second_harmonic))},
           {"safte_peak", number(CAMS_FIELD(human_factors.safte.peak_hour))},
           {"safte_relative_peak", number(CAMS_FIELD(human_factors.safte.relative_peak))},
           {"wake_hour", number(CAMS_FIELD(human_factors.sleep.wake_hour))},
           {"hours_slept", number(CAMS_FIELD(human_factors.sleep.hours_slept))},
       }},
      {"algorithm",
       {
           {"horizon",
            [](Builder& b, const std::string& key, const std::string& value) {
              if (auto v = to_integer<int>(value)) {
                b.scenario.algorithm.horizon = *v;
              } else {
                b.error(key + ": expected an integer, got '" + value + "'");
              }
            }},
           {"time_step", number(CAMS_FIELD(algorithm.grids.time_step))},
           {"queue_cap", number(CAMS_FIELD(algorithm.grids.queue_cap))},
           {"queue_step", number(CAMS_FIELD(algorithm.grids.queue_step))},
           {"cusum_threshold", number(CAMS_FIELD(algorithm.cusum_threshold))},
           {"critical_belief", number(CAMS_FIELD(algorithm.critical_belief))},
           {"routing",
            [](Builder& b, const std::string& key, const std::string& value) {
              if (value == "likelihood") {
                b.scenario.algorithm.routing_mode = sim::RoutingMode::likelihood;
              } else if (value == "metropolis_hastings") {
                b.scenario.algorithm.routing_mode = sim::RoutingMode::metropolis_hastings;
              } else if (value == "fmmc") {
                b.error(key + ": fmmc (fastest mixing chain) is not supported; use likelihood or "
                              "metropolis_hastings");
              } else {
                b.error(key + ": expected likelihood or metropolis_hastings, got '" + value + "'");
              }
            }},
       }},
      {"run",
       {
           {"duration", number(CAMS_FIELD(duration))},
           {"seed",
            [](Builder& b, const std::string& key, const std::string& value) {
              if (auto v = to_integer<std::uint64_t>(value)) {
                b.scenario.seed = *v;
              } else {
                b.error(key + ": expected a nonnegative integer, got '" + value + "'");
              }
            }},
           {"exogenous_factors", flag(CAMS_FIELD(exogenous_factors))},
       }},
      {"anomalies",
       {
           {"onset",
            [](Builder& b, const std::string& key, const std::string& value) {
              const auto toks = split_ws(value);
              std::optional<std::size_t> region;
              std::optional<double> time;
              if (toks.size() == 2) {
                region = to_integer<std::size_t>(toks[0]);
                time = to_double(toks[1]);
              }
              if (!region || !time) {
                b.error(key + ": expected '<region> <time>', got '" + value + "'");
                return;
              }
              b.scenario.anomalies.push_back({*region, *time});
            }},
       }},
  };
  return table;
}

#undef CAMS_FIELD

Matrix to_matrix(const std::vector<std::vector<double>>& rows, const char* key, std::vector<std::string>& errors) {
  const std::size_t m = rows.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != m) {
      errors.push_back(std::string(key) + ": dimension mismatch, " + std::to_string(m) + " rows but row " +
                       std::to_string(i) + " has " + std::to_string(rows[i].size()) + " values");
      return {};
    }
  }
  Matrix out(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

}  // namespace

sim::Scenario parse_scenario(std::istream& in) {
  Builder b;
  const auto& table = grammar();
  const std::map<std::string, Handler>* section = nullptr;
  std::string section_name;
  std::map<std::string, int> seen;
  const std::set<std::string> repeatable{"travel", "adjacency", "onset"};

  for (std::string raw; std::getline(in, raw);) {
    ++b.line;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        b.error("malformed section header '" + line + "'");
        section = nullptr;
        continue;
      }
      section_name = trim(line.substr(1, line.size() - 2));
      auto it = table.find(section_name);
      if (it == table.end()) {
        b.error("unknown section [" + section_name + "]");
        section = nullptr;
      } else {
        section = &it->second;
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      b.error("expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == nullptr) {
      if (section_name.empty()) b.error("key '" + key + "' outside any section");
      continue;
    }
    auto handler = section->find(key);
    if (handler == section->end()) {
      b.error("unknown key '" + key + "' in [" + section_name + "]");
      continue;
    }
    if (!repeatable.count(key) && seen[key]++ > 0) {
      b.error("duplicate key '" + key + "'");
      continue;
    }
    handler->second(b, key, value);
  }

  auto& graph = b.scenario.graph;
  for (const char* required : {"collection", "weights", "deadlines"}) {
    if (!seen.count(required)) b.errors.push_back(std::string("missing key '") + required + "'");
  }
  if (b.travel.empty()) b.errors.push_back("missing key 'travel'");
  graph.travel = to_matrix(b.travel, "travel", b.errors);
  graph.region_count = b.travel.size();
  if (b.adjacency.empty()) {
    graph.adjacency = Matrix(graph.region_count, graph.region_count, 1.0);
  } else {
    graph.adjacency = to_matrix(b.adjacency, "adjacency", b.errors);
  }
  if (b.errors.empty()) {
    for (auto& p : b.scenario.problems()) b.errors.push_back(std::move(p));
  }
  if (!b.errors.empty()) throw ScenarioError(std::move(b.errors));
  return b.scenario;
}

sim::Scenario parse_scenario_text(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

sim::Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError({"cannot open scenario file " + path.string()});
  return parse_scenario(in);
}

void write_scenario(std::ostream& out, const sim::Scenario& s) {
  auto row = [](const std::vector<double>& v) {
    std::string line;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) line += ' ';
      line += num(v[i]);
    }
    return line;
  };
  const auto& g = s.graph;
  const std::size_t m = g.region_count;
  out << "[graph]\n";
  bool complete = true;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> r(m);
    for (std::size_t j = 0; j < m; ++j) {
      r[j] = g.travel(i, j);
      complete = complete && g.adjacency(i, j) == 1.0;
    }
    out << "travel = " << row(r) << '\n';
  }
  if (!complete) {
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> r(m);
      for (std::size_t j = 0; j < m; ++j) r[j] = g.adjacency(i, j);
      out << "adjacency = " << row(r) << '\n';
    }
  }
  out << "collection = " << row(g.collection) << "\n\n";

  out << "[regions]\n";
  out << "weights = " << row(g.weights) << '\n';
  out << "deadlines = " << row(g.deadlines) << "\n\n";

  const auto& hf = s.human_factors;
  out << "[operator]\n";
  out << "drift = " << num(s.ddm.drift_magnitude) << '\n';
  out << "diffusion = " << num(s.ddm.diffusion) << '\n';
  out << "interrogation_threshold = " << num(s.ddm.interrogation_threshold) << '\n';
  out << "free_response_threshold = " << num(s.ddm.free_response_threshold) << '\n';
  out << "delay_cost = " << num(s.ddm.delay_cost) << '\n';
  out << "error_cost = " << num(s.ddm.error_cost) << '\n';
  out << "initial_utilization = " << num(s.initial_utilization) << '\n';
  out << "sensitivity = " << num(hf.utilization.sensitivity) << '\n';
  out << "utilization_optimal = " << num(hf.utilization.optimal) << '\n';
  out << "utilization_threshold = " << num(hf.utilization.threshold) << '\n';
  out << "motor_polynomial =";
  for (const auto& t : hf.utilization.motor_poly) out << ' ' << num(t.coefficient) << ':' << t.power;
  out << '\n';
  out << "retention_w1 = " << num(hf.retention.w1) << '\n';
  out << "retention_w2 = " << num(hf.retention.w2) << '\n';
  out << "retention_floor = " << num(hf.retention.floor) << '\n';
  out << "retention_tau1 = " << num(hf.retention.tau1) << '\n';
  out << "retention_tau2 = " << num(hf.retention.tau2) << '\n';
  out << "retention_scale = " << num(hf.retention.time_scale) << '\n';
  out << "safte_reservoir = " << num(hf.safte.reservoir_capacity) << '\n';
  out << "safte_drain = " << num(hf.safte.drain_rate) << '\n';
  out << "safte_amp1 = " << num(hf.safte.amp1) << '\n';
  out << "safte_amp2 = " << num(hf.safte.amp2) << '\n';
  out << "safte_beta = " << num(hf.safte.second_harmonic) << '\n';
  out << "safte_peak = " << num(hf.safte.peak_hour) << '\n';
  out << "safte_relative_peak = " << num(hf.safte.relative_peak) << '\n';
  out << "wake_hour = " << num(hf.sleep.wake_hour) << '\n';
  out << "hours_slept = " << num(hf.sleep.hours_slept) << "\n\n";

  const auto& a = s.algorithm;
  out << "[algorithm]\n";
  out << "horizon = " << a.horizon << '\n';
  out << "time_step = " << num(a.grids.time_step) << '\n';
  out << "queue_cap = " << num(a.grids.queue_cap) << '\n';
  out << "queue_step = " << num(a.grids.queue_step) << '\n';
  out << "cusum_threshold = " << num(a.cusum_threshold) << '\n';
  out << "critical_belief = " << num(a.critical_belief) << '\n';
  out << "routing = " << (a.routing_mode == sim::RoutingMode::likelihood ? "likelihood" : "metropolis_hastings")
      << "\n\n";

  out << "[run]\n";
  out << "duration = " << num(s.duration) << '\n';
  out << "seed = " << s.seed << '\n';
  out << "exogenous_factors = " << (s.exogenous_factors ? "on" : "off") << "\n\n";

  out << "[anomalies]\n";
  for (const auto& an : s.anomalies) out << "onset = " << an.region << ' ' << num(an.onset) << '\n';
}

std::string scenario_to_string(const sim::Scenario& scenario) {
  std::ostringstream out;
  write_scenario(out, scenario);
  return out.str();
}

}  // namespace cams::io
