#include "helmfuzz/batch.hpp"

#include <array>
#include <charconv>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "helmfuzz/errors.hpp"

namespace helmfuzz::batch {

namespace {

std::string short_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

CellResult run_cell(const sim::Scenario& base, const SweepCell& cell) {
  CellResult result;
  result.cell = cell;
  try {
    result.log = sim::run_scenario(cell_scenario(base, cell));
    result.metrics = sim::compute_metrics(result.log);
  } catch (const std::exception& e) {
    result.error = e.what();
    result.log.records.clear();
  }
  return result;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw ConfigError("linspace needs at least two points");
  std::vector<double> out(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double last = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = mid + half * ((2.0 * static_cast<double>(k) - last) / last);
  }
  return out;
}

ControlSurface evaluate_surface(const fuzzy::FisDefinition& fis, std::span<const double> psi_values,
                                std::span<const double> r_values, Execution exec, std::size_t grid_points) {
  ControlSurface surface;
  surface.psi_values.assign(psi_values.begin(), psi_values.end());
  surface.r_values.assign(r_values.begin(), r_values.end());
  const std::size_t nr = r_values.size();
  const auto total = static_cast<std::ptrdiff_t>(psi_values.size() * nr);
  surface.delta.resize(static_cast<std::size_t>(total));

  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < psi_values.size(); ++i) {
      for (std::size_t j = 0; j < nr; ++j) {
        surface.delta[i * nr + j] = fuzzy::evaluate(fis, psi_values[i], r_values[j], grid_points);
      }
    }
    return surface;
  }

  // evaluate() throws only for a zero-area aggregate; capture and rethrow outside the region.
  bool failed = false;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
    const auto i = static_cast<std::size_t>(idx) / nr;
    const auto j = static_cast<std::size_t>(idx) % nr;
    try {
      surface.delta[static_cast<std::size_t>(idx)] = fuzzy::evaluate(fis, psi_values[i], r_values[j], grid_points);
    } catch (const ZeroActivation&) {
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed) throw ZeroActivation("evaluate_surface: zero-area aggregate on the grid");
  return surface;
}

std::vector<SweepCell> make_cells(std::span<const double> depths, std::span<const double> commands_deg) {
  if (depths.empty() && commands_deg.empty()) throw ConfigError("sweep needs depths and/or commands");
  std::vector<std::optional<double>> ds(depths.begin(), depths.end());
  std::vector<std::optional<double>> cs(commands_deg.begin(), commands_deg.end());
  if (ds.empty()) ds.emplace_back();
  if (cs.empty()) cs.emplace_back();

  std::vector<SweepCell> cells;
  for (const auto& d : ds) {
    for (const auto& c : cs) {
      SweepCell cell{d, c, {}};
      if (d) cell.name += "d" + short_number(*d);
      if (d && c) cell.name += "_";
      if (c) cell.name += "c" + short_number(*c);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

sim::Scenario cell_scenario(const sim::Scenario& base, const SweepCell& cell) {
  sim::Scenario scn = base;
  if (cell.depth) scn.depth = guidance::DepthProfile(guidance::ConstantDepth{*cell.depth});
  if (cell.command_deg) scn.schedule = guidance::CommandSchedule::constant(*cell.command_deg * vessel::kDeg);
  return scn;
}

std::vector<CellResult> run_sweep(const sim::Scenario& base, std::span<const SweepCell> cells, Execution exec,
                                  int jobs) {
  std::vector<CellResult> results(cells.size());
  const auto n = static_cast<std::ptrdiff_t>(cells.size());
  if (exec == Execution::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) results[static_cast<std::size_t>(i)] = run_cell(base, cells[i]);
    return results;
  }
  const int threads = jobs > 0 ? jobs : default_jobs();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    results[static_cast<std::size_t>(i)] = run_cell(base, cells[static_cast<std::size_t>(i)]);
  }
  (void)threads;
  return results;
}

int default_jobs() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace helmfuzz::batch
