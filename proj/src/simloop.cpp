#include "helmfuzz/simloop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "helmfuzz/errors.hpp"
#include "helmfuzz/ruledsl.hpp"

namespace helmfuzz::sim {

void ControllerGains::validate() const {
  for (double g : {psi, r, out}) {
    if (!(std::isfinite(g) && g > 0.0)) throw ConfigError("controller gains must be positive and finite");
  }
}

void Scenario::validate() const {
  if (const auto issues = fuzzy::check_fis(fis); !issues.empty()) {
    throw ConfigError("invalid controller definition: " + issues.front());
  }
  vessel.validate();
  reference.validate();
  gains.validate();
  if (!(std::isfinite(t_end) && t_end > 0.0)) throw ConfigError("t_end must be > 0");
  if (!(std::isfinite(dt) && dt > 0.0)) throw ConfigError("dt must be > 0");
  if (grid_points < 2) throw ConfigError("grid_points must be >= 2");
}

std::size_t Scenario::record_count() const noexcept {
  // Guard against t_end/dt landing a hair below an integer.
  const double steps = std::floor(t_end / dt * (1.0 + 1e-12));
  return static_cast<std::size_t>(steps) + 1;
}

std::array<double, kLogColumns> to_row(const SimRecord& rec) noexcept {
  return {rec.t,     rec.psi_cmd, rec.psi_d,     rec.psi,       rec.psi_err, rec.r_d, rec.r,
          rec.r_err, rec.delta_cmd, rec.delta_applied, rec.h, rec.zeta, rec.yuv};
}

SimRecord from_row(const std::array<double, kLogColumns>& row) noexcept {
  return {row[0], row[1], row[2], row[3], row[4], row[5], row[6], row[7], row[8], row[9], row[10], row[11], row[12]};
}

double autopilot_command(const fuzzy::FisDefinition& fis, double psi_err, double r_err, const ControllerGains& gains,
                         double rudder_limit, std::size_t grid_points) {
  const double u = fuzzy::evaluate(fis, gains.psi * psi_err, gains.r * r_err, grid_points);
  return std::clamp(gains.out * u, -rudder_limit, rudder_limit);
}

SimLog run_scenario(const Scenario& scn) {
  scn.validate();
  const std::size_t n = scn.record_count();

  SimLog log;
  log.records.reserve(n);
  guidance::ReferenceModel reference(scn.reference);
  vessel::VesselState state = vessel::initial_state(scn.vessel);
  double delta_prev = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * scn.dt;
    try {
      SimRecord rec;
      rec.t = t;
      rec.psi_cmd = scn.schedule.command_at(t);
      rec.h = scn.depth.depth_at(t);
      rec.zeta = vessel::depth_ratio(scn.vessel.draft, rec.h);
      rec.yuv = vessel::shallow_water_coeff(rec.zeta);
      rec.psi_d = reference.psi_d();
      rec.r_d = reference.r_d();
      rec.psi = state.psi;
      rec.r = state.r;
      rec.psi_err = rec.psi_d - rec.psi;
      rec.r_err = rec.r_d - rec.r;
      rec.delta_cmd = autopilot_command(scn.fis, rec.psi_err, rec.r_err, scn.gains, scn.vessel.rudder_limit,
                                        scn.grid_points);
      rec.delta_applied = vessel::apply_rudder(rec.delta_cmd, delta_prev, scn.vessel, scn.dt);
      log.records.push_back(rec);

      if (k + 1 < n) {
        reference.step(rec.psi_cmd, scn.dt);
        state = vessel::step_rk4(state, rec.delta_applied, scn.vessel, rec.h, scn.dt);
        delta_prev = rec.delta_applied;
      }
    } catch (const InvalidDepth& e) {
      std::ostringstream os;
      os << e.what() << " (t = " << t << " s)";
      throw InvalidDepth(os.str());
    } catch (const ZeroActivation& e) {
      std::ostringstream os;
      os << e.what() << " (t = " << t << " s)";
      throw ZeroActivation(os.str());
    }
  }
  return log;
}

Metrics compute_metrics(const SimLog& log) {
  const auto& recs = log.records;
  if (recs.empty()) throw EmptyLog("compute_metrics: log has no records");

  Metrics m;
  double sum_sq = 0.0;
  std::size_t last_switch = 0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    m.max_abs_psi_err = std::max(m.max_abs_psi_err, std::abs(recs[i].psi_err));
    m.max_abs_delta = std::max(m.max_abs_delta, std::abs(recs[i].delta_applied));
    sum_sq += recs[i].psi_err * recs[i].psi_err;
    if (i > 0 && recs[i].psi_cmd != recs[i - 1].psi_cmd) last_switch = i;
  }
  m.rms_psi_err = std::sqrt(sum_sq / static_cast<double>(recs.size()));

  // First sample after the last switch from which |psi - psi_cmd| stays inside the band.
  std::size_t settle = recs.size();
  for (std::size_t i = recs.size(); i-- > last_switch;) {
    if (!(std::abs(recs[i].psi - recs[i].psi_cmd) < kSettleBand)) break;
    settle = i;
  }
  if (settle < recs.size()) m.settle_time = recs[settle].t;
  return m;
}

namespace {

Scenario base_scenario() {
  Scenario scn;
  scn.fis = dsl::builtin_paper_fis();
  scn.t_end = 12000.0;
  scn.dt = 1.0;
  return scn;
}

}  // namespace

Scenario make_preset(std::string_view name) {
  using vessel::kDeg;
  Scenario scn = base_scenario();
  if (name == "fig4") {
    scn.schedule = guidance::CommandSchedule::constant(45.0 * kDeg);
    scn.depth = guidance::DepthProfile(guidance::ConstantDepth{24.0});
  } else if (name == "fig5") {
    scn.schedule = guidance::CommandSchedule::constant(45.0 * kDeg);
    scn.depth = guidance::DepthProfile(guidance::ConstantDepth{200.0});
  } else if (name == "fig6") {
    scn.schedule = guidance::CommandSchedule({{0.0, 10.0 * kDeg}, {4000.0, 20.0 * kDeg}, {8000.0, -5.0 * kDeg}});
    scn.depth = guidance::DepthProfile(guidance::PiecewiseLinearDepth{{{0.0, 24.0}, {12000.0, 200.0}}});
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig4, fig5 or fig6)");
  }
  return scn;
}

std::vector<std::string> preset_names() { return {"fig4", "fig5", "fig6"}; }

}  // namespace helmfuzz::sim
