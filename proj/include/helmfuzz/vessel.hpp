#pragma once

// Linear non-dimensional sway-yaw model of a large tanker with a depth-dependent
// sway damping correction, planar kinematics and a fixed-step RK4 integrator.

#include <array>
#include <numbers>

namespace helmfuzz::vessel {

inline constexpr double kKnot = 0.5144;  // m/s
inline constexpr double kDeg = std::numbers::pi / 180.0;

/// Depth ratio at which the shallow-water sway correction switches on.
inline constexpr double kShallowThreshold = 0.8;

struct VesselParams {
  double length = 304.8;          // m, between perpendiculars
  double design_speed = 16.0 * kKnot;  // m/s
  double draft = 18.46;           // m
  // Prime-system hydrodynamic derivatives.
  double yv = -0.90;
  double yr = 0.40;
  double yd = 0.30;
  double nv = -0.30;
  double nr = -0.75;
  double nd = 0.35;
  double rudder_limit = 35.0 * kDeg;  // rad
  double rudder_rate_limit = 0.0;     // rad/s, 0 disables

  /// Throws ConfigError when a physical field is non-positive or non-finite.
  void validate() const;

  /// L/U, the prime-system time unit.
  double time_scale() const noexcept { return length / design_speed; }
};

struct VesselState {
  double u = 0.0;    // surge, m/s (held at design speed)
  double v = 0.0;    // sway, m/s
  double r = 0.0;    // yaw rate, rad/s
  double psi = 0.0;  // heading, rad, unwrapped
  double x = 0.0;    // north, m
  double y = 0.0;    // east, m

  friend bool operator==(const VesselState&, const VesselState&) = default;
};

/// Straight run at design speed.
inline VesselState initial_state(const VesselParams& p) noexcept {
  VesselState s;
  s.u = p.design_speed;
  return s;
}

/// T / (h - T). Throws InvalidDepth when h <= T.
double depth_ratio(double draft, double depth);

/// Y_uv correction: 0 below the threshold, -0.85 (1 - 0.8 / zeta) at or above it.
double shallow_water_coeff(double zeta) noexcept;

/// Non-dimensional sway-yaw system  [v' r']^T' = A [v' r']^T + B delta.
struct SwayYawSystem {
  std::array<std::array<double, 2>, 2> a{};
  std::array<double, 2> b{};
};

SwayYawSystem sway_yaw_system(const VesselParams& p, double zeta) noexcept;

/// Time derivative of the full state with rudder `delta` (rad) at depth `depth` (m).
VesselState vessel_derivative(const VesselState& s, double delta, const VesselParams& p, double depth);

/// One classical RK4 step with rudder and depth held over the step.
VesselState step_rk4(const VesselState& s, double delta, const VesselParams& p, double depth, double dt);

/// Actuator: rate limit (when enabled) then hard saturation at +-rudder_limit.
double apply_rudder(double commanded, double previous, const VesselParams& p, double dt) noexcept;

}  // namespace helmfuzz::vessel
