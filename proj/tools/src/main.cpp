#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <thread>

#include "cams/errors.hpp"
#include "cams/logging.hpp"
#include "cams/scenario_io.hpp"
#include "cams/sim_engine.hpp"
#include "cams/sweep.hpp"
#include "cams/trace_csv.hpp"
#include "cams/validation/acceptance.hpp"
#include "cams/validation/properties.hpp"
#include "report.hpp"

namespace {

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw CLI::ValidationError("--seeds", "expected A..B, got '" + text + "'");
  auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw CLI::ValidationError("--seeds", "'" + std::string(s) + "' is not a seed");
    }
    return v;
  };
  const auto a = number(std::string_view(text).substr(0, dots));
  const auto b = number(std::string_view(text).substr(dots + 2));
  if (b < a) throw CLI::ValidationError("--seeds", "range is empty");
  return {a, b};
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative surveillance simulator"};
  app.require_subcommand(1);
  std::string log_level = "error";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  std::string scenario_path, out_path, seeds_text;
  std::optional<std::uint64_t> seed;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  auto* run = app.add_subcommand("run", "Simulate one scenario and write its trace as CSV");
  run->add_option("scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out_path, "Trace file (default: stdout)");

  auto* sweep = app.add_subcommand("sweep", "Run a seed range and write one summary row per seed");
  sweep->add_option("scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--seeds", seeds_text, "Inclusive range A..B")->required();
  sweep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "CSV file (default: stdout)");

  std::string scenario_dir = "scenarios";
  std::size_t acceptance_seeds = 100;
  auto* validate = app.add_subcommand("validate", "Run the reference checks and the acceptance criteria");
  validate->add_option("--scenarios", scenario_dir, "Directory holding case1.scn and case2.scn")
      ->check(CLI::ExistingDirectory);
  validate->add_option("--seeds", acceptance_seeds, "Seeds per Monte Carlo criterion")->check(CLI::PositiveNumber);

  std::string trace_path, out_dir = "report";
  auto* report = app.add_subcommand("report", "Render a trace as SVG charts");
  report->add_option("trace", trace_path, "Trace CSV")->required()->check(CLI::ExistingFile);
  report->add_option("--out-dir", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }
  cams::logger().set_level(spdlog::level::from_str(log_level));

  try {
    if (*run) {
      auto scenario = cams::io::load_scenario(scenario_path);
      if (seed) scenario.seed = *seed;
      const auto result = cams::sim::run(scenario);
      std::ofstream file;
      cams::io::write_trace(open_output(out_path, file), scenario, result.trace);
      std::cerr << result.detections.size() << " detections, " << result.false_alarms() << " false alarms, "
                << result.tasks_processed << " tasks\n";
    } else if (*sweep) {
      const auto [first, last] = parse_seed_range(seeds_text);
      const auto scenario = cams::io::load_scenario(scenario_path);
      const auto rows = cams::sim::run_sweep(scenario, first, last, threads);
      std::ofstream file;
      cams::sim::write_sweep_csv(open_output(out_path, file), scenario, rows);
      std::size_t in_order = 0;
      for (const auto& r : rows) in_order += r.all_detected_in_order;
      std::cerr << in_order << " of " << rows.size() << " runs detected every anomaly in onset order\n";
    } else if (*validate) {
      std::vector<std::string> failed;
      for (const auto& p : cams::validation::run_properties()) {
        std::cout << (p.passed ? "[PASS] " : "[FAIL] ") << p.name << (p.detail.empty() ? "" : ": ") << p.detail
                  << '\n';
        if (!p.passed) failed.push_back(p.name);
      }
      cams::validation::AcceptanceConfig config{scenario_dir, acceptance_seeds};
      for (const auto& c : cams::validation::run_acceptance(config)) {
        std::cout << cams::validation::format_result(c) << '\n';
        if (!c.passed) failed.push_back("criterion " + std::to_string(c.id));
      }
      if (!failed.empty()) {
        std::cerr << "failed:";
        for (const auto& f : failed) std::cerr << ' ' << f << ';';
        std::cerr << '\n';
        return 1;
      }
    } else if (*report) {
      std::ifstream in(trace_path);
      const auto trace = cams::io::read_trace(in);
      for (const auto& p : cams::tools::write_report(trace, out_dir)) std::cout << p.string() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
