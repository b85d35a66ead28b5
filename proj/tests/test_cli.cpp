#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdarwin/runconfig.hpp"

using namespace qdarwin;

TEST_CASE("run configuration round-trips through the text format") {
  cli::RunConfig config;
  config.command = "figure";
  config.theorem = 2;
  config.nbar = 0.123456789012345678;
  config.delta = 0.01;
  config.n_text = "3.5e29";
  config.figure = "fig3";
  config.grid = "17:29:13";
  config.suite = "mutual-info";
  config.trials = 137;
  config.samples = 4242;
  config.seed = 998877;
  config.out = "rows.csv";
  config.format = "json";
  config.tol_inequality = 2.5e-9;
  config.alpha_re = -0.25;
  config.squeeze = 0.75;
  config.omega = 0.3333333333333333;
  config.certify = true;

  const std::string text = cli::serialize(config);
  const cli::RunConfig back = cli::parse_config_text(text);
  CHECK(cli::serialize(back) == text);
  CHECK(back.nbar == config.nbar);
  CHECK(back.seed == config.seed);
  CHECK(back.certify == config.certify);
}

TEST_CASE("config parsing rejects malformed input") {
  CHECK_THROWS_AS(cli::parse_config_text("nonsense line"), InvalidParameter);
  CHECK_THROWS_AS(cli::parse_config_text("unknown_key = 3"), InvalidParameter);
  CHECK_THROWS_AS(cli::parse_config_text("nbar = abc"), InvalidParameter);
  CHECK_NOTHROW(cli::parse_config_text("# comment\n\nnbar = 2\n"));
  CHECK_THROWS_AS(cli::parse_config_file("/nonexistent/path.cfg"), InvalidData);
}

TEST_CASE("grid specifications") {
  const auto fallback = optim::default_exp_cutoff_grid();
  CHECK(cli::grid_from_spec("", fallback).size() == fallback.size());
  const auto custom = cli::grid_from_spec("5:9:5", fallback);
  REQUIRE(custom.size() == 5);
  CHECK(custom.front().str() == "1e+5");
  CHECK(custom.back().str() == "1e+9");
  CHECK_THROWS_AS(cli::grid_from_spec("5:9", fallback), InvalidParameter);
  CHECK_THROWS_AS(cli::grid_from_spec("9:5:3", fallback), InvalidParameter);
}

TEST_CASE("figure serialization carries header, rows and fit footer") {
  optim::SweepRow row;
  row.n = LogReal::parse("1e20");
  row.bound_analytic = 0.25;
  row.bound_numeric = 0.125;
  row.d = 42;
  row.m = 1e10;
  row.epsilon = std::numeric_limits<double>::quiet_NaN();
  row.omega = 0.3;
  row.Omega = 2.5;
  row.route = "worst-moment";
  optim::PowerLawFit fit{6.5, 15.0, 0.01};

  const std::string csv2 = cli::fig2_csv({row}, fit);
  CHECK(csv2.find("N,bound_analytic,bound_numeric,d,m\n") == 0);
  CHECK(csv2.find("1e+20,0.25,0.125,42,10000000000\n") != std::string::npos);
  CHECK(csv2.find("# fit {\"model\"") != std::string::npos);

  const std::string csv3 = cli::fig3_csv({row}, fit);
  CHECK(csv3.find("N,bound_closed,bound_numeric,d,epsilon,omega,Omega\n") == 0);
  // NaN epsilon renders as an empty field
  CHECK(csv3.find("1e+20,0.25,0.125,42,,0.3,2.5\n") != std::string::npos);

  const std::string json = cli::fig_json("fig3", {row}, fit);
  CHECK(json.find("\"route\": \"worst-moment\"") != std::string::npos);
  CHECK(json.find("\"alpha\": 15.0") != std::string::npos);
}

TEST_CASE("number formatting uses twelve significant digits") {
  CHECK(cli::format_number(0.1234567890123456) == "0.123456789012");
  CHECK(cli::format_number(2.0) == "2");
  CHECK(cli::format_number(1e60) == "1e+60");
}
