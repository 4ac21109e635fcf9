#include "helmfuzz/csv.hpp"

#include <array>
#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "helmfuzz/errors.hpp"

namespace helmfuzz::io {

namespace {

void put_real(std::ostream& os, double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  os.write(buf.data(), res.ptr - buf.data());
}

std::string header_line() {
  std::string h;
  for (std::size_t k = 0; k < sim::kLogColumns; ++k) {
    if (k > 0) h += ',';
    h += sim::kLogColumnNames[k];
  }
  return h;
}

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string py_string(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

void write_log_csv(std::ostream& os, const sim::SimLog& log) {
  os << header_line() << '\n';
  for (const auto& rec : log.records) {
    const auto row = sim::to_row(rec);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) os << ',';
      put_real(os, row[k]);
    }
    os << '\n';
  }
}

sim::SimLog read_log_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("log csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header_line()) throw Error("log csv: unexpected header '" + line + "'");

  sim::SimLog log;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, sim::kLogColumns> row{};
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t k = 0; k < sim::kLogColumns; ++k) {
      const auto res = std::from_chars(p, end, row[k]);
      const bool last = k + 1 == sim::kLogColumns;
      if (res.ec != std::errc{} || (last ? res.ptr != end : (res.ptr == end || *res.ptr != ','))) {
        throw Error("log csv: malformed row at line " + std::to_string(line_no));
      }
      p = res.ptr + 1;
    }
    log.records.push_back(sim::from_row(row));
  }
  return log;
}

void write_summary_csv(std::ostream& os, std::span<const batch::CellResult> results) {
  os << "cell,depth,command_deg,status,max_abs_psi_err,settle_time,max_abs_delta,rms_psi_err,error\n";
  for (const auto& r : results) {
    os << r.cell.name << ',';
    if (r.cell.depth) put_real(os, *r.cell.depth);
    os << ',';
    if (r.cell.command_deg) put_real(os, *r.cell.command_deg);
    os << ',';
    if (r.metrics) {
      os << "ok,";
      put_real(os, r.metrics->max_abs_psi_err);
      os << ',';
      if (r.metrics->settle_time) {
        put_real(os, *r.metrics->settle_time);
      } else {
        os << "nan";
      }
      os << ',';
      put_real(os, r.metrics->max_abs_delta);
      os << ',';
      put_real(os, r.metrics->rms_psi_err);
      os << ",\n";
    } else {
      os << "error,,,,," << quote(r.error) << '\n';
    }
  }
}

std::string format_metrics(const sim::Metrics& m) {
  constexpr double to_deg = 1.0 / vessel::kDeg;
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << "max_abs_psi_err_deg " << m.max_abs_psi_err * to_deg << '\n';
  os << "rms_psi_err_deg     " << m.rms_psi_err * to_deg << '\n';
  os << "max_abs_delta_deg   " << m.max_abs_delta * to_deg << '\n';
  if (m.settle_time) {
    os << "settle_time_s       " << std::setprecision(1) << *m.settle_time << '\n';
  } else {
    os << "settle_time_s       not settled\n";
  }
  return os.str();
}

std::string plot_script(const std::string& csv_path, const std::string& title) {
  std::ostringstream os;
  os << "#!/usr/bin/env python3\n"
        "# Renders a helmfuzz run log. Usage: python3 <this script> [csv] [png]\n"
        "import csv\n"
        "import math\n"
        "import sys\n"
        "\n"
        "import matplotlib\n"
        "matplotlib.use(\"Agg\")\n"
        "import matplotlib.pyplot as plt\n"
        "\n"
        "path = sys.argv[1] if len(sys.argv) > 1 else "
     << py_string(csv_path)
     << "\n"
        "out = sys.argv[2] if len(sys.argv) > 2 else path.rsplit(\".\", 1)[0] + \".png\"\n"
        "cols = {}\n"
        "with open(path, newline=\"\") as f:\n"
        "    for row in csv.DictReader(f):\n"
        "        for k, v in row.items():\n"
        "            cols.setdefault(k, []).append(float(v))\n"
        "deg = lambda xs: [math.degrees(x) for x in xs]\n"
        "t = cols[\"t\"]\n"
        "fig, ax = plt.subplots(4, 1, sharex=True, figsize=(8, 10))\n"
        "ax[0].plot(t, deg(cols[\"psi_d\"]), \"--\", label=\"desired\")\n"
        "ax[0].plot(t, deg(cols[\"psi\"]), \"-\", label=\"actual\")\n"
        "ax[0].set_ylabel(\"heading [deg]\")\n"
        "ax[0].legend()\n"
        "ax[1].plot(t, deg(cols[\"psi_err\"]))\n"
        "ax[1].axhline(3.0, color=\"r\", lw=0.5)\n"
        "ax[1].axhline(-3.0, color=\"r\", lw=0.5)\n"
        "ax[1].set_ylabel(\"heading error [deg]\")\n"
        "ax[2].plot(t, deg(cols[\"delta_applied\"]))\n"
        "ax[2].set_ylabel(\"rudder [deg]\")\n"
        "ax[3].plot(t, cols[\"h\"])\n"
        "ax[3].set_ylabel(\"depth [m]\")\n"
        "ax[3].set_xlabel(\"time [s]\")\n"
        "fig.suptitle("
     << py_string(title)
     << ")\n"
        "fig.tight_layout()\n"
        "fig.savefig(out, dpi=120)\n"
        "print(out)\n";
  return os.str();
}

}  // namespace helmfuzz::io
