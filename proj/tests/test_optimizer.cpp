#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdarwin/optimizer.hpp"
#include "qdarwin/rng.hpp"

using namespace qdarwin;

TEST_CASE("golden section on simple objectives") {
  const double quad = optim::golden_section(
      [](double x) { return (x - 3.0) * (x - 3.0); }, 0.0, 10.0, 1e-10);
  CHECK(quad == doctest::Approx(3.0).epsilon(1e-8));

  const double vee = optim::golden_section(
      [](double x) { return std::abs(x - M_PI); }, 0.0, 10.0, 1e-10);
  CHECK(std::abs(vee - M_PI) < 1e-8);

  RngStream rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const double center = rng.uniform(-5.0, 5.0);
    const double scale = rng.uniform(0.1, 4.0);
    const auto f = [&](double x) { return scale * (x - center) * (x - center); };
    const double got = optim::golden_section(f, -6.0, 6.0, 1e-9);
    double best = -6.0;
    for (double x = -6.0; x <= 6.0; x += 1e-4)
      if (f(x) < f(best)) best = x;
    CHECK(std::abs(got - best) < 1e-3);
  }

  CHECK_THROWS_AS(optim::golden_section([](double x) { return x; }, 1.0, 1.0, 1e-6),
                  InvalidInterval);
}

TEST_CASE("integer argmin scans the candidate set exactly") {
  const auto f = [](long long x) { return double((x - 7) * (x - 7)); };
  std::vector<long long> candidates;
  for (long long x = -3; x <= 20; ++x) candidates.push_back(x);
  CHECK(optim::integer_argmin(f, candidates) == 7);
  CHECK_THROWS_AS(optim::integer_argmin(f, {}), InvalidInterval);
}

TEST_CASE("mean-energy minimizer hits the pinned targets") {
  const auto at60 = optim::minimize_mean_energy(1.0, LogReal::parse("1e60"));
  const double value = at60.zeta / 0.01;
  CHECK(value >= 0.03);
  CHECK(value <= 0.3);

  // the numeric minimum never exceeds the analytic relaxation
  for (double log10n = 3.0; log10n <= 60.0; log10n += 3.0) {
    const LogReal n = LogReal::from_ln(log10n * std::log(10.0));
    const auto opt = optim::minimize_mean_energy(1.0, n);
    CHECK(opt.zeta <= bounds::mean_energy_analytic(1.0, n) + 1e-9);
  }

  // the markov term caps m at n
  const auto tiny = optim::minimize_mean_energy(1.0, LogReal::from_value(1.0));
  CHECK(tiny.m == 1.0);
}

TEST_CASE("mean-energy minimizer returns certified local optima") {
  for (double log10n : {6.0, 12.0}) {
    const LogReal n = LogReal::from_decimal(1.0, static_cast<long long>(log10n));
    const auto opt = optim::minimize_mean_energy(1.0, n);
    const double here = bounds::mean_energy_f(opt.d, 1.0, n);
    if (opt.d > 2)
      CHECK(bounds::mean_energy_f(opt.d - 1, 1.0, n) >= here - 1e-12);
    CHECK(bounds::mean_energy_f(opt.d + 1, 1.0, n) >= here - 1e-12);

    const double zeta_here = bounds::mean_energy_zeta(opt.d, opt.m, 1.0, n);
    if (opt.m > 1.0)
      CHECK(bounds::mean_energy_zeta(opt.d, opt.m - 1.0, 1.0, n) >=
            zeta_here - 1e-12);
    CHECK(bounds::mean_energy_zeta(opt.d, opt.m + 1.0, 1.0, n) >=
          zeta_here - 1e-12);
  }
}

TEST_CASE("exponential-cutoff minimizer reaches the pinned target") {
  const LogReal n = LogReal::parse("1e29");
  const auto opt = optim::minimize_exp_cutoff(1.0, n);
  CHECK(opt.zeta / 0.01 <= 5e-4);
  CHECK(opt.zeta <= bounds::exp_cutoff_closed(opt.omega, opt.Omega, n) + 1e-9);

  // integer neighbors certify the reported d
  const double here = bounds::exp_cutoff_zeta(opt.d, opt.omega, opt.Omega, n);
  if (opt.d > 1)
    CHECK(bounds::exp_cutoff_zeta(opt.d - 1, opt.omega, opt.Omega, n) >=
          here - 1e-12);
  CHECK(bounds::exp_cutoff_zeta(opt.d + 1, opt.omega, opt.Omega, n) >=
        here - 1e-12);

  CHECK_THROWS_AS(optim::minimize_exp_cutoff(0.0, n), InvalidParameter);

  optim::ExpCutoffOptions no_routes;
  no_routes.cutoff_params_family = false;
  no_routes.worst_moment_family = false;
  CHECK_THROWS_AS(optim::minimize_exp_cutoff(1.0, n, no_routes), NoFeasiblePoint);
}

TEST_CASE("exponential-cutoff minimizer is monotone over the grid and per-route") {
  double previous = std::numeric_limits<double>::infinity();
  for (double log10n : {8.0, 12.0, 16.0, 20.0, 24.0, 29.0}) {
    const auto opt = optim::minimize_exp_cutoff(
        1.0, LogReal::from_ln(log10n * std::log(10.0)));
    CHECK(opt.zeta <= previous + 1e-12);
    previous = opt.zeta;
  }

  // the constructive family alone still works and cannot beat the combined run
  optim::ExpCutoffOptions constructive;
  constructive.worst_moment_family = false;
  const LogReal n = LogReal::parse("1e20");
  const auto eps_only = optim::minimize_exp_cutoff(1.0, n, constructive);
  CHECK(eps_only.route == "cutoff-params");
  CHECK(eps_only.epsilon > 0.0);
  CHECK(eps_only.epsilon < 1.0);
  const auto both = optim::minimize_exp_cutoff(1.0, n);
  CHECK(both.zeta <= eps_only.zeta + 1e-15);
}

TEST_CASE("minimizers are deterministic") {
  const LogReal n = LogReal::parse("3.7e21");
  const auto a = optim::minimize_exp_cutoff(1.0, n);
  const auto b = optim::minimize_exp_cutoff(1.0, n);
  CHECK(a.zeta == b.zeta);
  CHECK(a.d == b.d);
  CHECK(a.omega == b.omega);
  const auto c = optim::minimize_mean_energy(1.0, n);
  const auto d = optim::minimize_mean_energy(1.0, n);
  CHECK(c.zeta == d.zeta);
  CHECK(c.d == d.d);
}

TEST_CASE("power-law fit recovers exact synthetic data") {
  const double beta = 5.0, alpha = 10.0, delta = 0.01;
  std::vector<std::pair<LogReal, double>> rows;
  for (double log10n = 5.0; log10n <= 17.0; log10n += 1.0) {
    const LogReal n = LogReal::from_ln(log10n * std::log(10.0));
    rows.emplace_back(n, beta * std::exp(-n.ln() / alpha) / delta);
  }
  const auto fit = optim::power_law_fit(rows, delta);
  CHECK(fit.beta == doctest::Approx(beta).epsilon(1e-9));
  CHECK(fit.alpha == doctest::Approx(alpha).epsilon(1e-9));
  CHECK(fit.rms_log < 1e-12);

  CHECK_THROWS_AS(
      optim::power_law_fit({{LogReal::from_value(10.0), 1.0},
                            {LogReal::from_value(100.0), 0.5}},
                           delta),
      InvalidData);
  rows[3].second = -1.0;
  CHECK_THROWS_AS(optim::power_law_fit(rows, delta), InvalidData);
}

TEST_CASE("figure sweeps satisfy the dominance and fit contracts") {
  const auto fig2 = optim::sweep_mean_energy(1.0, 0.01,
                                             optim::default_mean_energy_grid());
  REQUIRE(fig2.size() == 13);
  double previous = std::numeric_limits<double>::infinity();
  std::vector<std::pair<LogReal, double>> rows;
  for (const auto& row : fig2) {
    CHECK(row.bound_numeric <= row.bound_analytic + 1e-9);
    CHECK(row.bound_numeric <= previous);
    previous = row.bound_numeric;
    rows.emplace_back(row.n, row.bound_numeric);
  }
  const auto fit = optim::power_law_fit(rows, 0.01);
  CHECK(fit.alpha >= 14.5);
  CHECK(fit.alpha <= 16.0);
  CHECK(fit.beta >= 5.0);
  CHECK(fit.beta <= 9.0);
  CHECK(fit.rms_log <= 0.05);
}
