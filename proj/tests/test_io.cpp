#include <doctest.h>

#include <sstream>

#include "helmfuzz/csv.hpp"
#include "helmfuzz/errors.hpp"
#include "helmfuzz/simloop.hpp"

using namespace helmfuzz;

TEST_CASE("log csv round-trips exactly") {
  auto scn = sim::make_preset("fig6");
  scn.t_end = 600.0;
  const auto log = sim::run_scenario(scn);
  std::stringstream ss;
  io::write_log_csv(ss, log);
  const std::string text = ss.str();
  CHECK(text.rfind("t,psi_cmd,psi_d,psi,psi_err,r_d,r,r_err,delta_cmd,delta_applied,h,zeta,yuv\n", 0) == 0);
  const auto back = io::read_log_csv(ss);
  CHECK(back.records == log.records);

  std::stringstream again;
  io::write_log_csv(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("malformed csv") {
  std::stringstream bad_header("a,b,c\n");
  CHECK_THROWS_AS(io::read_log_csv(bad_header), Error);
  std::stringstream short_row("t,psi_cmd,psi_d,psi,psi_err,r_d,r,r_err,delta_cmd,delta_applied,h,zeta,yuv\n1,2,3\n");
  CHECK_THROWS_AS(io::read_log_csv(short_row), Error);
}

TEST_CASE("summary and plot script") {
  batch::CellResult ok;
  ok.cell = {24.0, 45.0, "d24_c45"};
  ok.metrics = sim::Metrics{0.01, 1900.0, 0.07, 0.005};
  batch::CellResult failed;
  failed.cell = {18.0, 45.0, "d18_c45"};
  failed.error = "water depth 18 m must exceed the draft 18.46 m";
  const std::vector<batch::CellResult> results = {ok, failed};
  std::ostringstream os;
  io::write_summary_csv(os, results);
  const auto text = os.str();
  CHECK(text.find("d24_c45,24,45,ok,0.01,1900,0.07,0.005,") != std::string::npos);
  CHECK(text.find("d18_c45,18,45,error,,,,,\"water depth") != std::string::npos);

  const auto script = io::plot_script("runs/fig4.csv", "fig4");
  CHECK(script.find("\"runs/fig4.csv\"") != std::string::npos);
  CHECK(script.find("delta_applied") != std::string::npos);
  CHECK(script.find("plt.subplots(4, 1") != std::string::npos);
}
