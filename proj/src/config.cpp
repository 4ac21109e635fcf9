#include "helmfuzz/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "helmfuzz/errors.hpp"
#include "helmfuzz/ruledsl.hpp"

namespace helmfuzz::config {

namespace {

using vessel::kDeg;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double parse_number(std::string_view text, std::size_t line) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    fail(line, "invalid number '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::pair<double, double>> parse_pairs(std::string_view text, std::size_t line) {
  std::vector<std::pair<double, double>> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    const auto colon = item.find(':');
    if (item.empty() || colon == std::string_view::npos) fail(line, "expected a list of 't:value' pairs");
    out.emplace_back(parse_number(item.substr(0, colon), line), parse_number(item.substr(colon + 1), line));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct Entry {
  std::string value;
  std::size_t line;
};

using Handler = std::function<void(const Entry&)>;

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path.string() + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

ScenarioConfig parse_scenario_config(std::string_view text, const std::filesystem::path& base_dir) {
  ScenarioConfig cfg;
  sim::Scenario& scn = cfg.scenario;
  scn.depth = guidance::DepthProfile(guidance::ConstantDepth{200.0});

  // Angle keys come in rad and `_deg` forms; only one of each pair may appear.
  std::map<std::string, std::string> exclusive = {
      {"vessel.rudder_limit_deg", "vessel.rudder_limit"},
      {"vessel.rudder_rate_limit_deg", "vessel.rudder_rate_limit"},
      {"vessel.design_speed_kn", "vessel.design_speed"},
      {"schedule.commands_deg", "schedule.commands"},
      {"depth.profile", "depth.constant"},
  };

  auto number = [](double& dst) { return [&dst](const Entry& e) { dst = parse_number(e.value, e.line); }; };
  auto scaled = [](double& dst, double scale) {
    return [&dst, scale](const Entry& e) { dst = parse_number(e.value, e.line) * scale; };
  };
  auto schedule = [&scn](double scale) {
    return [&scn, scale](const Entry& e) {
      std::vector<guidance::CommandEntry> entries;
      for (const auto& [t, v] : parse_pairs(e.value, e.line)) entries.push_back({t, v * scale});
      try {
        scn.schedule = guidance::CommandSchedule(std::move(entries));
      } catch (const ConfigError& err) {
        fail(e.line, err.what());
      }
    };
  };

  const std::map<std::string, Handler> handlers = {
      {"vessel.length", number(scn.vessel.length)},
      {"vessel.design_speed", number(scn.vessel.design_speed)},
      {"vessel.design_speed_kn", scaled(scn.vessel.design_speed, vessel::kKnot)},
      {"vessel.draft", number(scn.vessel.draft)},
      {"vessel.yv", number(scn.vessel.yv)},
      {"vessel.yr", number(scn.vessel.yr)},
      {"vessel.yd", number(scn.vessel.yd)},
      {"vessel.nv", number(scn.vessel.nv)},
      {"vessel.nr", number(scn.vessel.nr)},
      {"vessel.nd", number(scn.vessel.nd)},
      {"vessel.rudder_limit", number(scn.vessel.rudder_limit)},
      {"vessel.rudder_limit_deg", scaled(scn.vessel.rudder_limit, kDeg)},
      {"vessel.rudder_rate_limit", number(scn.vessel.rudder_rate_limit)},
      {"vessel.rudder_rate_limit_deg", scaled(scn.vessel.rudder_rate_limit, kDeg)},
      {"reference.omega_n", number(scn.reference.omega_n)},
      {"reference.zeta_d", number(scn.reference.zeta_d)},
      {"controller.fis",
       [&](const Entry& e) {
         if (e.value == "builtin") {
           scn.fis = dsl::builtin_paper_fis();
           return;
         }
         std::filesystem::path p(e.value);
         if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
         try {
           scn.fis = dsl::parse_fis(read_text(p));
         } catch (const ParseError& err) {
           fail(e.line, p.string() + ": " + err.what());
         } catch (const Error& err) {
           fail(e.line, err.what());
         }
       }},
      {"controller.g_psi", number(scn.gains.psi)},
      {"controller.g_r", number(scn.gains.r)},
      {"controller.g_u", number(scn.gains.out)},
      {"controller.grid_points",
       [&](const Entry& e) {
         const double v = parse_number(e.value, e.line);
         if (v < 2 || v != std::floor(v)) fail(e.line, "grid_points must be an integer >= 2");
         scn.grid_points = static_cast<std::size_t>(v);
       }},
      {"schedule.commands", schedule(1.0)},
      {"schedule.commands_deg", schedule(kDeg)},
      {"depth.constant",
       [&](const Entry& e) { scn.depth = guidance::DepthProfile(guidance::ConstantDepth{parse_number(e.value, e.line)}); }},
      {"depth.profile",
       [&](const Entry& e) {
         guidance::PiecewiseLinearDepth p;
         for (const auto& [t, h] : parse_pairs(e.value, e.line)) p.knots.push_back({t, h});
         try {
           scn.depth = guidance::DepthProfile(std::move(p));
         } catch (const ConfigError& err) {
           fail(e.line, err.what());
         }
       }},
      {"sim.t_end", number(scn.t_end)},
      {"sim.dt", number(scn.dt)},
      {"output.csv", [&](const Entry& e) { cfg.csv_path = e.value; }},
      {"output.plot_script", [&](const Entry& e) { cfg.plot_script_path = e.value; }},
  };
  const std::set<std::string> sections = {"vessel", "reference", "controller", "schedule", "depth", "sim", "output"};

  std::map<std::string, std::size_t> seen;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!sections.count(section)) fail(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    if (section.empty()) fail(line_no, "key outside of any section");
    const std::string key = std::string(trim(line.substr(0, eq)));
    const std::string value = std::string(trim(line.substr(eq + 1)));
    const std::string full = section + "." + key;
    const auto handler = handlers.find(full);
    if (handler == handlers.end()) fail(line_no, "unknown key '" + key + "' in [" + section + "]");
    if (value.empty()) fail(line_no, "missing value for '" + key + "'");
    if (const auto prev = seen.find(full); prev != seen.end()) {
      fail(line_no, "duplicate key '" + key + "' (first set on line " + std::to_string(prev->second) + ")");
    }
    for (const auto& [a, b] : exclusive) {
      const std::string& other = full == a ? b : (full == b ? a : std::string{});
      if (!other.empty() && seen.count(other)) {
        fail(line_no, "'" + key + "' conflicts with '" + other.substr(other.find('.') + 1) + "' on line " +
                          std::to_string(seen.at(other)));
      }
    }
    seen[full] = line_no;
    handler->second(Entry{value, line_no});
  }

  try {
    scn.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  const auto base = path == "-" ? std::filesystem::path{} : path.parent_path();
  return parse_scenario_config(text, base);
}

}  // namespace helmfuzz::config
