#include "helmfuzz/vessel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "helmfuzz/errors.hpp"

namespace helmfuzz::vessel {

void VesselParams::validate() const {
  auto positive = [](double value, const char* name) {
    if (!(std::isfinite(value) && value > 0.0)) {
      std::ostringstream os;
      os << "vessel parameter '" << name << "' must be positive and finite (got " << value << ")";
      throw ConfigError(os.str());
    }
  };
  positive(length, "length");
  positive(design_speed, "design_speed");
  positive(draft, "draft");
  positive(rudder_limit, "rudder_limit");
  for (double c : {yv, yr, yd, nv, nr, nd}) {
    if (!std::isfinite(c)) throw ConfigError("vessel hydrodynamic coefficients must be finite");
  }
  if (!(std::isfinite(rudder_rate_limit) && rudder_rate_limit >= 0.0)) {
    throw ConfigError("vessel parameter 'rudder_rate_limit' must be >= 0");
  }
}

double depth_ratio(double draft, double depth) {
  if (!(depth > draft)) {
    std::ostringstream os;
    os << "water depth " << depth << " m must exceed the draft " << draft << " m";
    throw InvalidDepth(os.str());
  }
  return draft / (depth - draft);
}

double shallow_water_coeff(double zeta) noexcept {
  if (zeta < kShallowThreshold) return 0.0;
  return -0.85 * (1.0 - kShallowThreshold / zeta);
}

SwayYawSystem sway_yaw_system(const VesselParams& p, double zeta) noexcept {
  SwayYawSystem sys;
  sys.a = {{{p.yv + shallow_water_coeff(zeta), p.yr - 1.0}, {p.nv, p.nr}}};
  sys.b = {p.yd, p.nd};
  return sys;
}

VesselState vessel_derivative(const VesselState& s, double delta, const VesselParams& p, double depth) {
  const SwayYawSystem sys = sway_yaw_system(p, depth_ratio(p.draft, depth));
  const double speed = p.design_speed;
  const double inv_tau = speed / p.length;

  const double v_prime = s.v / speed;
  const double r_prime = s.r * p.length / speed;
  const double dv_prime = sys.a[0][0] * v_prime + sys.a[0][1] * r_prime + sys.b[0] * delta;
  const double dr_prime = sys.a[1][0] * v_prime + sys.a[1][1] * r_prime + sys.b[1] * delta;

  const double c = std::cos(s.psi);
  const double sn = std::sin(s.psi);
  VesselState d;
  d.u = 0.0;
  d.v = dv_prime * speed * inv_tau;
  d.r = dr_prime * (speed / p.length) * inv_tau;
  d.psi = s.r;
  d.x = s.u * c - s.v * sn;
  d.y = s.u * sn + s.v * c;
  return d;
}

namespace {

VesselState axpy(const VesselState& s, double h, const VesselState& d) noexcept {
  return {s.u + h * d.u, s.v + h * d.v, s.r + h * d.r, s.psi + h * d.psi, s.x + h * d.x, s.y + h * d.y};
}

}  // namespace

VesselState step_rk4(const VesselState& s, double delta, const VesselParams& p, double depth, double dt) {
  const VesselState k1 = vessel_derivative(s, delta, p, depth);
  const VesselState k2 = vessel_derivative(axpy(s, 0.5 * dt, k1), delta, p, depth);
  const VesselState k3 = vessel_derivative(axpy(s, 0.5 * dt, k2), delta, p, depth);
  const VesselState k4 = vessel_derivative(axpy(s, dt, k3), delta, p, depth);
  const double w = dt / 6.0;
  return {s.u + w * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
          s.v + w * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
          s.r + w * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r),
          s.psi + w * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi),
          s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.y + w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
}

double apply_rudder(double commanded, double previous, const VesselParams& p, double dt) noexcept {
  double delta = commanded;
  if (p.rudder_rate_limit > 0.0) {
    const double max_step = p.rudder_rate_limit * dt;
    delta = std::clamp(delta, previous - max_step, previous + max_step);
  }
  return std::clamp(delta, -p.rudder_limit, p.rudder_limit);
}

}  // namespace helmfuzz::vessel
