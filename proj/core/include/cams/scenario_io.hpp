#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cams/sim_engine.hpp"

// Scenario files: INI-style sections of `key = value` lines. See
// docs/scenario-format.md for the grammar.

namespace cams::io {

/// Parses and validates a scenario. Throws ScenarioError listing every
/// problem found, each prefixed with its line number when it has one.
sim::Scenario parse_scenario(std::istream& in);
sim::Scenario parse_scenario_text(const std::string& text);
sim::Scenario load_scenario(const std::filesystem::path& path);

/// Writes every field with 17 significant digits, so parsing the output
/// gives back an equal scenario.
void write_scenario(std::ostream& out, const sim::Scenario& scenario);
std::string scenario_to_string(const sim::Scenario& scenario);

}  // namespace cams::io
