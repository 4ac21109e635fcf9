#pragma once

// Data-parallel kernels: control-surface evaluation over a grid of error pairs
// and parameter sweeps over independent scenario cells. Each kernel has a serial
// path kept as the reference the OpenMP path is tested against.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "helmfuzz/fuzzy.hpp"
#include "helmfuzz/simloop.hpp"

namespace helmfuzz::batch {

enum class Execution { serial, parallel };

/// n evenly spaced values from lo to hi inclusive (n >= 2), exactly symmetric when lo == -hi.
std::vector<double> linspace(double lo, double hi, std::size_t n);

struct ControlSurface {
  std::vector<double> psi_values;
  std::vector<double> r_values;
  std::vector<double> delta;  // row-major, psi outer

  double at(std::size_t i, std::size_t j) const { return delta[i * r_values.size() + j]; }
};

/// Crisp controller output (no gains, no saturation) at every (psi, r) pair.
ControlSurface evaluate_surface(const fuzzy::FisDefinition& fis, std::span<const double> psi_values,
                                std::span<const double> r_values, Execution exec = Execution::parallel,
                                std::size_t grid_points = fuzzy::kDefaultGridPoints);

struct SweepCell {
  std::optional<double> depth;        // m; empty keeps the base profile
  std::optional<double> command_deg;  // deg; empty keeps the base schedule
  std::string name;                   // d{depth}_c{cmd}
};

/// Cartesian product of depths x commands. Either list may be empty, but not both.
std::vector<SweepCell> make_cells(std::span<const double> depths, std::span<const double> commands_deg);

/// Base scenario with the cell's constant depth and/or single step command applied.
sim::Scenario cell_scenario(const sim::Scenario& base, const SweepCell& cell);

struct CellResult {
  SweepCell cell;
  std::optional<sim::Metrics> metrics;  // empty when the run failed
  std::string error;
  sim::SimLog log;
};

/// Runs every cell; failures are captured per cell. Results keep the cell order.
/// `jobs` bounds the worker count for the parallel path (0 = OpenMP default).
std::vector<CellResult> run_sweep(const sim::Scenario& base, std::span<const SweepCell> cells,
                                  Execution exec = Execution::parallel, int jobs = 0);

/// Worker count the parallel path would use by default.
int default_jobs() noexcept;

}  // namespace helmfuzz::batch
