#include "helmfuzz/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "helmfuzz/batch.hpp"
#include "helmfuzz/config.hpp"
#include "helmfuzz/csv.hpp"
#include "helmfuzz/errors.hpp"
#include "helmfuzz/ruledsl.hpp"
#include "helmfuzz/simloop.hpp"

namespace helmfuzz::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string shortest(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

struct ScenarioSource {
  std::string config;
  std::string preset;
};

config::ScenarioConfig resolve_scenario(const ScenarioSource& src) {
  if (!src.config.empty()) return config::load_scenario_config(src.config);
  config::ScenarioConfig cfg;
  cfg.scenario = sim::make_preset(src.preset.empty() ? "fig4" : src.preset);
  return cfg;
}

fuzzy::FisDefinition load_fis(const std::string& path) {
  if (path.empty() || path == "builtin") return dsl::builtin_paper_fis();
  return dsl::parse_fis(config::read_text(path));
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write '" + path.string() + "'");
  os << content;
  if (!os) throw Error("failed writing '" + path.string() + "'");
}

std::string log_to_csv(const sim::SimLog& log) {
  std::ostringstream os;
  io::write_log_csv(os, log);
  return os.str();
}

int cmd_run(const ScenarioSource& src, std::string out_path, bool emit_plot, std::string plot_path,
            std::ostream& out, std::ostream& err) {
  const auto cfg = resolve_scenario(src);
  if (out_path.empty() && cfg.csv_path) out_path = *cfg.csv_path;
  if (out_path.empty()) throw UsageError("run: no output given (use --out PATH or --out -)");
  if (plot_path.empty() && cfg.plot_script_path) plot_path = *cfg.plot_script_path;
  if (emit_plot && plot_path.empty()) {
    if (out_path == "-") throw UsageError("run: --emit-plot with --out - needs --plot-script PATH");
    fs::path p(out_path);
    plot_path = (p.parent_path() / (p.stem().string() + "_plot.py")).string();
  }

  sim::SimLog log;
  try {
    log = sim::run_scenario(cfg.scenario);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    err << "simulation error: " << e.what() << '\n';
    return kExitRuntime;
  }
  const std::string csv = log_to_csv(log);
  std::ostream& report = out_path == "-" ? err : out;
  if (out_path == "-") {
    out << csv;
  } else {
    write_file(out_path, csv);
  }
  if (emit_plot) {
    const std::string title = src.preset.empty() ? (src.config.empty() ? "fig4" : src.config) : src.preset;
    write_file(plot_path, io::plot_script(out_path == "-" ? "run.csv" : out_path, title));
    report << "plot script: " << plot_path << '\n';
  }
  report << "records             " << log.records.size() << '\n' << io::format_metrics(sim::compute_metrics(log));
  return kExitOk;
}

int cmd_fis_eval(double psi_err, double r_err, const std::string& fis_path, std::size_t grid, std::ostream& out) {
  const auto fis = load_fis(fis_path);
  out << shortest(fuzzy::evaluate(fis, psi_err, r_err, grid)) << '\n';
  return kExitOk;
}

int cmd_fis_check(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto text = config::read_text(path);
  try {
    const auto fis = dsl::parse_fis(text);
    if (const auto issues = fuzzy::check_fis(fis); !issues.empty()) {
      for (const auto& i : issues) err << path << ": " << i << '\n';
      return kExitUsage;
    }
  } catch (const ParseError& e) {
    err << path << ":" << e.line() << ": " << e.detail() << '\n';
    return kExitUsage;
  }
  out << path << ": ok\n";
  return kExitOk;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  if (text.empty()) return values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto* b = item.data();
    const auto* e = item.data() + item.size();
    if (!item.empty() && *b == '+') ++b;
    const auto res = std::from_chars(b, e, v);
    if (item.empty() || res.ec != std::errc{} || res.ptr != e) {
      throw UsageError(std::string("sweep: invalid ") + what + " value '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

int env_jobs() {
  if (const char* env = std::getenv("HELMFUZZ_JOBS")) {
    int v = 0;
    const std::string_view s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec == std::errc{} && res.ptr == s.data() + s.size() && v > 0) return v;
  }
  return batch::default_jobs();
}

int cmd_sweep(const ScenarioSource& src, const std::string& depths_text, const std::string& commands_text,
              const std::string& out_dir, int jobs, std::ostream& out, std::ostream& err) {
  const auto depths = parse_list(depths_text, "depth");
  const auto commands = parse_list(commands_text, "command");
  if (depths.empty() && commands.empty()) throw UsageError("sweep: give --depths and/or --commands");
  const auto cfg = resolve_scenario(src);
  const auto cells = batch::make_cells(depths, commands);

  fs::create_directories(out_dir);
  const auto results = batch::run_sweep(cfg.scenario, cells, batch::Execution::parallel, jobs > 0 ? jobs : env_jobs());

  bool failed = false;
  for (const auto& r : results) {
    if (r.metrics) {
      write_file(fs::path(out_dir) / (r.cell.name + ".csv"), log_to_csv(r.log));
      out << r.cell.name << ": max|psi_err| " << r.metrics->max_abs_psi_err / vessel::kDeg << " deg, max|delta| "
          << r.metrics->max_abs_delta / vessel::kDeg << " deg\n";
    } else {
      failed = true;
      err << r.cell.name << ": " << r.error << '\n';
    }
  }
  std::ostringstream summary;
  io::write_summary_csv(summary, results);
  write_file(fs::path(out_dir) / "summary.csv", summary.str());
  return failed ? kExitRuntime : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"helmfuzz: fuzzy heading autopilot for a large tanker"};
  app.require_subcommand(1);

  ScenarioSource run_src;
  std::string run_out;
  std::string plot_path;
  bool emit_plot = false;
  auto* run = app.add_subcommand("run", "Run one closed-loop scenario and write its CSV log");
  auto* run_cfg = run->add_option("--config", run_src.config, "Scenario config file");
  run->add_option("--preset", run_src.preset, "Built-in scenario: fig4, fig5 or fig6")->excludes(run_cfg);
  run->add_option("--out", run_out, "CSV output path, or - for standard output");
  run->add_flag("--emit-plot", emit_plot, "Also write a matplotlib script for the log");
  run->add_option("--plot-script", plot_path, "Plot script path (default: <out stem>_plot.py)");

  auto* fis = app.add_subcommand("fis", "Inspect and validate controller definitions");
  fis->require_subcommand(1);
  double psi_err = 0.0;
  double r_err = 0.0;
  std::string eval_fis;
  std::size_t grid = fuzzy::kDefaultGridPoints;
  auto* eval = fis->add_subcommand("eval", "Crisp rudder [rad] for psi_err [rad] and r_err [rad/s]");
  eval->add_option("--psi-err", psi_err, "Heading error in RADIANS")->required();
  eval->add_option("--r-err", r_err, "Heading-rate error in rad/s")->required();
  eval->add_option("--fis", eval_fis, "Controller .fis file (default: builtin)");
  eval->add_option("--grid", grid, "Centroid grid points")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  std::string check_path;
  auto* check = fis->add_subcommand("check", "Validate a .fis file (- reads standard input)");
  check->add_option("path", check_path, "File to check")->required();
  auto* dump = fis->add_subcommand("dump", "Print the built-in controller in canonical form");

  ScenarioSource sweep_src;
  std::string depths_text;
  std::string commands_text;
  std::string out_dir;
  int jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "Run depth x command grids of step scenarios");
  auto* sweep_cfg = sweep->add_option("--config", sweep_src.config, "Base scenario config file");
  sweep->add_option("--preset", sweep_src.preset, "Base preset (default fig4)")->excludes(sweep_cfg);
  sweep->add_option("--depths", depths_text, "Comma-separated constant depths [m]");
  sweep->add_option("--commands", commands_text, "Comma-separated step commands [deg]");
  sweep->add_option("--out-dir", out_dir, "Directory for per-cell CSVs and summary.csv")->required();
  sweep->add_option("--jobs", jobs, "Parallel cells (default $HELMFUZZ_JOBS or all cores)")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_src, run_out, emit_plot, plot_path, out, err);
    if (*eval) return cmd_fis_eval(psi_err, r_err, eval_fis, grid, out);
    if (*check) return cmd_fis_check(check_path, out, err);
    if (*dump) {
      out << dsl::serialize_fis(dsl::builtin_paper_fis());
      return kExitOk;
    }
    if (*sweep) return cmd_sweep(sweep_src, depths_text, commands_text, out_dir, jobs, out, err);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace helmfuzz::cli
