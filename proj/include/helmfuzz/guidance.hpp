#pragma once

// Desired heading generation: a critically (or over-) damped second-order
// reference model driven by a piecewise-constant command schedule, plus the
// water-depth profile seen by the vessel over a run.

#include <utility>
#include <variant>
#include <vector>

namespace helmfuzz::guidance {

struct ReferenceParams {
  double omega_n = 0.003;  // rad/s
  double zeta_d = 1.0;

  /// Throws ConfigError unless omega_n > 0 and zeta_d >= 1.
  void validate() const;
};

/// psi_d'' = omega_n^2 (psi_cmd - psi_d) - 2 zeta_d omega_n psi_d'
class ReferenceModel {
 public:
  explicit ReferenceModel(ReferenceParams params, double psi_d = 0.0, double r_d = 0.0);

  /// Advances by dt (RK4) with psi_cmd held; returns the new (psi_d, r_d).
  std::pair<double, double> step(double psi_cmd, double dt) noexcept;

  double psi_d() const noexcept { return psi_d_; }
  double r_d() const noexcept { return r_d_; }
  const ReferenceParams& params() const noexcept { return params_; }

 private:
  ReferenceParams params_;
  double psi_d_;
  double r_d_;
};

struct CommandEntry {
  double t_start = 0.0;  // s
  double psi_cmd = 0.0;  // rad

  friend bool operator==(const CommandEntry&, const CommandEntry&) = default;
};

class CommandSchedule {
 public:
  /// Throws ConfigError unless non-empty, first entry at t = 0, starts strictly increasing.
  explicit CommandSchedule(std::vector<CommandEntry> entries);

  static CommandSchedule constant(double psi_cmd) { return CommandSchedule({{0.0, psi_cmd}}); }

  /// Command of the latest entry with t_start <= t; a switch instant belongs to the new command.
  double command_at(double t) const noexcept;

  const std::vector<CommandEntry>& entries() const noexcept { return entries_; }

 private:
  std::vector<CommandEntry> entries_;
};

struct ConstantDepth {
  double depth = 0.0;  // m
};

struct DepthKnot {
  double t = 0.0;      // s
  double depth = 0.0;  // m
};

struct PiecewiseLinearDepth {
  std::vector<DepthKnot> knots;
};

class DepthProfile {
 public:
  DepthProfile() : profile_(ConstantDepth{200.0}) {}
  /// Throws ConfigError on empty or non-increasing knots, or non-finite depths.
  explicit DepthProfile(ConstantDepth c);
  explicit DepthProfile(PiecewiseLinearDepth p);

  /// Constant value, or linear interpolation between knots; held at the end knots outside them.
  double depth_at(double t) const noexcept;

  double min_depth() const noexcept;
  bool is_constant() const noexcept { return std::holds_alternative<ConstantDepth>(profile_); }
  const std::variant<ConstantDepth, PiecewiseLinearDepth>& profile() const noexcept { return profile_; }

 private:
  std::variant<ConstantDepth, PiecewiseLinearDepth> profile_;
};

}  // namespace helmfuzz::guidance
