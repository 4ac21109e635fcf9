#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "helmfuzz/batch.hpp"
#include "helmfuzz/simloop.hpp"

namespace helmfuzz::io {

/// Header row with the 13 log columns, then one record per line. Reals use the
/// shortest representation that parses back to the same double.
void write_log_csv(std::ostream& os, const sim::SimLog& log);

/// Inverse of write_log_csv. Throws Error on a malformed header or row.
sim::SimLog read_log_csv(std::istream& is);

/// One row of metrics per sweep cell (failed cells carry the error text).
void write_summary_csv(std::ostream& os, std::span<const batch::CellResult> results);

/// Metrics in degrees for the terminal.
std::string format_metrics(const sim::Metrics& m);

/// Python/matplotlib script that renders heading vs desired, heading error,
/// rudder and depth panels from `csv_path`.
std::string plot_script(const std::string& csv_path, const std::string& title);

}  // namespace helmfuzz::io
