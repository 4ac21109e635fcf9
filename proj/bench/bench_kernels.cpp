// Serial vs OpenMP timings for the two batch kernels.
//
//   helmfuzz_bench [--surface N] [--cells N] [--repeat N] [--jobs N]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "helmfuzz/batch.hpp"
#include "helmfuzz/ruledsl.hpp"

using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double best_of(int repeat, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t surface = 201;
  std::size_t cells = 8;
  int repeat = 3;
  int jobs = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--surface")) surface = std::strtoul(argv[i + 1], nullptr, 10);
    else if (!std::strcmp(argv[i], "--cells")) cells = std::strtoul(argv[i + 1], nullptr, 10);
    else if (!std::strcmp(argv[i], "--repeat")) repeat = std::atoi(argv[i + 1]);
    else if (!std::strcmp(argv[i], "--jobs")) jobs = std::atoi(argv[i + 1]);
    else {
      std::fprintf(stderr, "unknown option %s\n", argv[i]);
      return 2;
    }
  }
  using namespace helmfuzz;
  const auto& fis = dsl::builtin_paper_fis();
  const auto psi = batch::linspace(-0.4, 0.4, surface);
  const auto r = batch::linspace(-0.01, 0.01, surface);

  batch::ControlSurface s_serial;
  batch::ControlSurface s_parallel;
  const double ts = best_of(repeat, [&] { s_serial = batch::evaluate_surface(fis, psi, r, batch::Execution::serial); });
  const double tp =
      best_of(repeat, [&] { s_parallel = batch::evaluate_surface(fis, psi, r, batch::Execution::parallel); });
  std::printf("surface %zux%zu   serial %.4f s   parallel %.4f s   speedup %.2fx   identical %s\n", surface,
              surface, ts, tp, ts / tp, s_serial.delta == s_parallel.delta ? "yes" : "NO");

  std::vector<double> depths;
  for (std::size_t i = 0; i < cells; ++i) depths.push_back(24.0 + 176.0 * static_cast<double>(i) / std::max<std::size_t>(1, cells - 1));
  const std::vector<double> commands = {45.0};
  const auto grid = batch::make_cells(depths, commands);
  auto base = sim::make_preset("fig4");
  base.t_end = 4000.0;

  std::vector<batch::CellResult> r_serial;
  std::vector<batch::CellResult> r_parallel;
  const double ss = best_of(repeat, [&] { r_serial = batch::run_sweep(base, grid, batch::Execution::serial); });
  const double sp =
      best_of(repeat, [&] { r_parallel = batch::run_sweep(base, grid, batch::Execution::parallel, jobs); });
  bool same = r_serial.size() == r_parallel.size();
  for (std::size_t i = 0; same && i < r_serial.size(); ++i) same = r_serial[i].log.records == r_parallel[i].log.records;
  std::printf("sweep %zu cells     serial %.4f s   parallel %.4f s   speedup %.2fx   identical %s   (threads %d)\n",
              grid.size(), ss, sp, ss / sp, same ? "yes" : "NO", jobs > 0 ? jobs : batch::default_jobs());
  return same && s_serial.delta == s_parallel.delta ? 0 : 1;
}
