#pragma once

// Scenario configuration files: INI-style sections of `key = value` lines.
//
//   [vessel]     length design_speed design_speed_kn draft yv yr yd nv nr nd
//                rudder_limit rudder_limit_deg rudder_rate_limit rudder_rate_limit_deg
//   [reference]  omega_n zeta_d
//   [controller] fis (builtin | path) g_psi g_r g_u grid_points
//   [schedule]   commands (t:rad, ...) | commands_deg (t:deg, ...)
//   [depth]      constant (m) | profile (t:m, ...)
//   [sim]        t_end dt
//   [output]     csv plot_script
//
// Unknown sections or keys, duplicates and malformed values are rejected with
// the offending line number.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "helmfuzz/simloop.hpp"

namespace helmfuzz::config {

struct ScenarioConfig {
  sim::Scenario scenario;
  std::optional<std::string> csv_path;
  std::optional<std::string> plot_script_path;
};

/// `base_dir` resolves a relative `fis = <path>`. Throws ConfigError; errors from a
/// referenced .fis file surface as ConfigError mentioning both files.
ScenarioConfig parse_scenario_config(std::string_view text, const std::filesystem::path& base_dir = {});

ScenarioConfig load_scenario_config(const std::filesystem::path& path);

/// Reads a whole file (or standard input for "-"). Throws Error when unreadable.
std::string read_text(const std::filesystem::path& path);

}  // namespace helmfuzz::config
