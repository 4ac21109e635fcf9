#include "helmfuzz/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "helmfuzz/errors.hpp"

namespace helmfuzz::guidance {

void ReferenceParams::validate() const {
  if (!(std::isfinite(omega_n) && omega_n > 0.0)) throw ConfigError("reference omega_n must be > 0");
  // Underdamped desired paths would overshoot the command.
  if (!(std::isfinite(zeta_d) && zeta_d >= 1.0)) throw ConfigError("reference zeta_d must be >= 1");
}

ReferenceModel::ReferenceModel(ReferenceParams params, double psi_d, double r_d)
    : params_(params), psi_d_(psi_d), r_d_(r_d) {
  params_.validate();
}

std::pair<double, double> ReferenceModel::step(double psi_cmd, double dt) noexcept {
  const double w2 = params_.omega_n * params_.omega_n;
  const double c = 2.0 * params_.zeta_d * params_.omega_n;
  auto accel = [&](double psi, double r) { return w2 * (psi_cmd - psi) - c * r; };

  const double k1p = r_d_;
  const double k1r = accel(psi_d_, r_d_);
  const double k2p = r_d_ + 0.5 * dt * k1r;
  const double k2r = accel(psi_d_ + 0.5 * dt * k1p, r_d_ + 0.5 * dt * k1r);
  const double k3p = r_d_ + 0.5 * dt * k2r;
  const double k3r = accel(psi_d_ + 0.5 * dt * k2p, r_d_ + 0.5 * dt * k2r);
  const double k4p = r_d_ + dt * k3r;
  const double k4r = accel(psi_d_ + dt * k3p, r_d_ + dt * k3r);

  psi_d_ += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  r_d_ += dt / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
  return {psi_d_, r_d_};
}

CommandSchedule::CommandSchedule(std::vector<CommandEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ConfigError("command schedule is empty");
  if (entries_.front().t_start != 0.0) throw ConfigError("command schedule must start at t = 0");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i].psi_cmd) || !std::isfinite(entries_[i].t_start)) {
      throw ConfigError("command schedule entries must be finite");
    }
    if (i > 0 && !(entries_[i].t_start > entries_[i - 1].t_start)) {
      throw ConfigError("command schedule start times must be strictly increasing");
    }
  }
}

double CommandSchedule::command_at(double t) const noexcept {
  const auto it = std::upper_bound(entries_.begin(), entries_.end(), t,
                                   [](double value, const CommandEntry& e) { return value < e.t_start; });
  return it == entries_.begin() ? entries_.front().psi_cmd : std::prev(it)->psi_cmd;
}

DepthProfile::DepthProfile(ConstantDepth c) : profile_(c) {
  if (!std::isfinite(c.depth)) throw ConfigError("depth must be finite");
}

DepthProfile::DepthProfile(PiecewiseLinearDepth p) {
  if (p.knots.empty()) throw ConfigError("depth profile needs at least one knot");
  for (std::size_t i = 0; i < p.knots.size(); ++i) {
    if (!std::isfinite(p.knots[i].t) || !std::isfinite(p.knots[i].depth)) {
      throw ConfigError("depth profile knots must be finite");
    }
    if (i > 0 && !(p.knots[i].t > p.knots[i - 1].t)) {
      throw ConfigError("depth profile knot times must be strictly increasing");
    }
  }
  profile_ = std::move(p);
}

double DepthProfile::depth_at(double t) const noexcept {
  if (const auto* c = std::get_if<ConstantDepth>(&profile_)) return c->depth;
  const auto& knots = std::get<PiecewiseLinearDepth>(profile_).knots;
  if (t <= knots.front().t) return knots.front().depth;
  if (t >= knots.back().t) return knots.back().depth;
  const auto hi = std::upper_bound(knots.begin(), knots.end(), t,
                                   [](double value, const DepthKnot& k) { return value < k.t; });
  const auto lo = std::prev(hi);
  const double s = (t - lo->t) / (hi->t - lo->t);
  return lo->depth + s * (hi->depth - lo->depth);
}

double DepthProfile::min_depth() const noexcept {
  if (const auto* c = std::get_if<ConstantDepth>(&profile_)) return c->depth;
  const auto& knots = std::get<PiecewiseLinearDepth>(profile_).knots;
  return std::min_element(knots.begin(), knots.end(),
                          [](const DepthKnot& a, const DepthKnot& b) { return a.depth < b.depth; })
      ->depth;
}

}  // namespace helmfuzz::guidance
