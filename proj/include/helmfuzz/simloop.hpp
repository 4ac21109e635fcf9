#pragma once

// Closed-loop heading autopilot simulation: reference model -> tracking errors
// -> fuzzy controller -> rudder actuator -> vessel, sampled at a fixed step.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "helmfuzz/fuzzy.hpp"
#include "helmfuzz/guidance.hpp"
#include "helmfuzz/ruledsl.hpp"
#include "helmfuzz/vessel.hpp"

namespace helmfuzz::sim {

struct ControllerGains {
  double psi = 1.0;  // applied to psi_err before fuzzification
  double r = 1.0;    // applied to r_err before fuzzification
  double out = 1.0;  // applied to the defuzzified rudder

  void validate() const;
};

struct Scenario {
  fuzzy::FisDefinition fis = dsl::builtin_paper_fis();
  vessel::VesselParams vessel;
  guidance::ReferenceParams reference;
  guidance::CommandSchedule schedule = guidance::CommandSchedule::constant(0.0);
  guidance::DepthProfile depth;
  double t_end = 12000.0;  // s
  double dt = 1.0;         // s
  ControllerGains gains;
  std::size_t grid_points = fuzzy::kDefaultGridPoints;

  /// Throws ConfigError on any invalid field (including the FIS invariants).
  void validate() const;
  /// floor(t_end / dt) + 1
  std::size_t record_count() const noexcept;
};

/// One logged sample. All angles in rad, rates in rad/s, depth in m.
struct SimRecord {
  double t = 0.0;
  double psi_cmd = 0.0;
  double psi_d = 0.0;
  double psi = 0.0;
  double psi_err = 0.0;
  double r_d = 0.0;
  double r = 0.0;
  double r_err = 0.0;
  double delta_cmd = 0.0;
  double delta_applied = 0.0;
  double h = 0.0;
  double zeta = 0.0;
  double yuv = 0.0;

  friend bool operator==(const SimRecord&, const SimRecord&) = default;
};

inline constexpr std::size_t kLogColumns = 13;
inline constexpr std::array<std::string_view, kLogColumns> kLogColumnNames = {
    "t", "psi_cmd", "psi_d", "psi", "psi_err", "r_d", "r", "r_err", "delta_cmd", "delta_applied", "h", "zeta", "yuv"};

std::array<double, kLogColumns> to_row(const SimRecord& rec) noexcept;
SimRecord from_row(const std::array<double, kLogColumns>& row) noexcept;

struct SimLog {
  std::vector<SimRecord> records;
};

struct Metrics {
  double max_abs_psi_err = 0.0;        // rad
  std::optional<double> settle_time;   // s, empty when not settled by t_end
  double max_abs_delta = 0.0;          // rad, applied rudder
  double rms_psi_err = 0.0;            // rad
};

/// Settling band on |psi - psi_cmd|.
inline constexpr double kSettleBand = 1.0 * vessel::kDeg;

/// g_u * centroid(infer(g_psi * e, g_r * e_dot)) saturated at +-rudder_limit.
double autopilot_command(const fuzzy::FisDefinition& fis, double psi_err, double r_err, const ControllerGains& gains,
                         double rudder_limit, std::size_t grid_points = fuzzy::kDefaultGridPoints);

/// Deterministic fixed-step run. InvalidDepth / ZeroActivation are rethrown with
/// the failing timestamp in the message.
SimLog run_scenario(const Scenario& scn);

/// Throws EmptyLog for an empty log.
Metrics compute_metrics(const SimLog& log);

/// Named presets reproducing the published experiments: "fig4" (45 deg, 24 m),
/// "fig5" (45 deg, 200 m), "fig6" (10/20/-5 deg at 0/4000/8000 s, depth 24 -> 200 m).
/// Throws ConfigError for an unknown name.
Scenario make_preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace helmfuzz::sim
