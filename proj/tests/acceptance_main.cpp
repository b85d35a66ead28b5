// Acceptance runner: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] is the path to the command-line binary (used by the
// determinism criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qdarwin/bounds.hpp"
#include "qdarwin/gaussian.hpp"
#include "qdarwin/optimizer.hpp"
#include "qdarwin/verify.hpp"

using namespace qdarwin;

namespace {

int failures = 0;

void criterion(int number, const std::string& name,
               const std::function<bool(std::string&)>& body,
               double time_limit_seconds = 0.0) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (ok && time_limit_seconds > 0.0 && seconds > time_limit_seconds) {
    ok = false;
    detail += " [over the time limit]";
  }
  std::printf("%s  %2d. %-28s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), seconds, detail.empty() ? "" : "  ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string cli_path;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool run_cli_twice_identical(const std::string& args, std::string& detail) {
  const std::string out1 = "/tmp/qdarwin_accept_a.txt";
  const std::string out2 = "/tmp/qdarwin_accept_b.txt";
  const std::string cmd1 = cli_path + " " + args + " > " + out1 + " 2>/dev/null";
  const std::string cmd2 = cli_path + " " + args + " > " + out2 + " 2>/dev/null";
  const int rc1 = std::system(cmd1.c_str());
  const int rc2 = std::system(cmd2.c_str());
  if (rc1 != rc2) {
    detail += "[exit codes differ: " + args + "]";
    return false;
  }
  const std::string a = read_file(out1), b = read_file(out2);
  if (a.empty() || a != b) {
    detail += "[output differs or empty: " + args + "]";
    return false;
  }
  return true;
}

} // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];

  const double delta = 0.01;
  const double nbar = 1.0;

  criterion(1, "analytic coefficient", [&](std::string& detail) {
    const double c = 17.0 * std::pow(2.0 / 7.0, 14.0 / 17.0);
    detail = "coefficient=" + std::to_string(c);
    return c >= 6.05 && c <= 6.07;
  });

  std::vector<optim::SweepRow> fig2;
  criterion(2, "mean-energy sweep and fit", [&](std::string& detail) {
    fig2 = optim::sweep_mean_energy(nbar, delta, optim::default_mean_energy_grid());
    const double at60 = fig2.back().bound_numeric;
    std::vector<std::pair<LogReal, double>> rows;
    for (const auto& row : fig2) rows.emplace_back(row.n, row.bound_numeric);
    const auto fit = optim::power_law_fit(rows, delta);
    std::ostringstream s;
    s << "value(1e60)=" << at60 << " alpha=" << fit.alpha << " beta=" << fit.beta
      << " rms=" << fit.rms_log;
    detail = s.str();
    return at60 >= 0.03 && at60 <= 0.3 && fit.alpha >= 14.5 && fit.alpha <= 16.0 &&
           fit.beta >= 5.0 && fit.beta <= 9.0 && fit.rms_log <= 0.05;
  }, 10.0);

  std::vector<optim::SweepRow> fig3;
  criterion(3, "exponential-cutoff sweep and fit", [&](std::string& detail) {
    fig3 = optim::sweep_exp_cutoff(nbar, delta, optim::default_exp_cutoff_grid());
    const double at29 = fig3.back().bound_numeric;
    std::vector<std::pair<LogReal, double>> rows;
    for (const auto& row : fig3) rows.emplace_back(row.n, row.bound_numeric);
    const auto fit = optim::power_law_fit(rows, delta);
    std::ostringstream s;
    s << "value(1e29)=" << at29 << " alpha=" << fit.alpha << " rms=" << fit.rms_log;
    detail = s.str();
    return at29 <= 5e-4 && fit.alpha >= 3.0 && fit.alpha <= 3.5;
  }, 60.0);

  criterion(4, "relaxation dominance", [&](std::string& detail) {
    if (fig2.empty() || fig3.empty()) {
      detail = "sweeps unavailable";
      return false;
    }
    for (const auto& row : fig2)
      if (!(row.bound_numeric <= row.bound_analytic + 1e-9)) return false;
    for (const auto& row : fig3) {
      if (std::isnan(row.bound_analytic)) continue;  // gamma2 n <= 1
      if (!(row.bound_numeric <= row.bound_analytic + 1e-9)) return false;
    }
    detail = "numeric <= closed form at every grid point";
    return true;
  });

  criterion(5, "gaussian moment oracles", [&](std::string& detail) {
    double worst = 0.0;
    const double omegas[5] = {0.05, 0.1, 0.2, 0.3, 0.4};
    const double params[5] = {0.2, 0.6, 1.0, 1.5, 2.0};
    // vacuum pins the formula's normalization exactly
    for (double omega : omegas) {
      const auto vac =
          gaussian::exp_moment(gaussian::GaussianState({0, 0}, 0, 0), omega);
      if (std::abs(vac.moment - 1.0) > 1e-13) return false;
    }
    for (int family = 0; family < 3; ++family) {
      for (double parameter : params) {
        for (double omega : omegas) {
          gaussian::GaussianState state({0, 0}, 0, 0);
          double oracle = 0.0;
          if (family == 0) {  // coherent, Poisson sum
            state = gaussian::GaussianState({parameter, 0}, 0, 0);
            double sum = 0.0, term = std::exp(-parameter * parameter);
            for (int n = 0; n < 100000; ++n) {
              sum += term;
              const double ratio =
                  parameter * parameter * std::exp(omega) / (n + 1);
              term *= ratio;
              if (ratio < 1.0 && term / (1.0 - ratio) < 1e-14 * sum) break;
            }
            oracle = sum;
          } else if (family == 1) {  // thermal, geometric sum
            const double m = 0.5 * parameter;
            state = gaussian::GaussianState({0, 0}, m, 0);
            const double ratio = m / (m + 1.0) * std::exp(omega);
            if (ratio >= 1.0) {
              if (gaussian::exp_moment(state, omega).feasible) return false;
              continue;
            }
            double sum = 0.0, term = 1.0 / (m + 1.0);
            for (int n = 0; n < 100000; ++n) {
              sum += term;
              term *= ratio;
              if (term / (1.0 - ratio) < 1e-14 * sum) break;
            }
            oracle = sum;
          } else {  // squeezed vacuum, even-level sum
            const double r = 0.4 * parameter;
            state = gaussian::GaussianState({0, 0}, 0, r);
            const double t2 = std::tanh(r) * std::tanh(r);
            if (t2 * std::exp(2.0 * omega) >= 1.0) continue;
            double sum = 0.0, p = 1.0 / std::cosh(r);
            for (int n = 0; n < 100000; ++n) {
              sum += p * std::exp(2.0 * omega * n);
              const double ratio = t2 * (2.0 * n + 1.0) / (2.0 * n + 2.0);
              p *= ratio;
              if (p * std::exp(2.0 * omega * (n + 1)) /
                      (1.0 - t2 * std::exp(2.0 * omega)) < 1e-14 * sum)
                break;
            }
            oracle = sum;
          }
          const auto report = gaussian::exp_moment(state, omega);
          if (!report.feasible) return false;
          worst = std::max(worst,
                           std::abs(report.moment - oracle) / oracle);
        }
      }
    }
    detail = "worst relative error " + std::to_string(worst);
    return worst <= 1e-8;
  }, 5.0);

  criterion(6, "bounded-energy certificate", [&](std::string& detail) {
    const auto report = gaussian::certify_set(1.0, 0.5, 4.0, 10000, 1);
    std::ostringstream s;
    s << "violations=" << report.violations << " worst=" << report.worst_moment;
    detail = s.str();
    return report.all_pass && report.violations == 0;
  }, 10.0);

  criterion(7, "lemma trial suites", [&](std::string& detail) {
    const std::vector<verify::LemmaReport> reports = {
        verify::check_gentle_measurement(200, 4, 1),
        verify::check_fock_truncation(200, 5, 3, 1),
        verify::check_cj_truncation(100, 1),
        verify::check_ecd_choi_bound(100, 1),
        verify::check_expcut_choi_bound(100, 1),
        verify::check_mutual_info_bound(100, 1),
        verify::check_norm_axioms(200, 1),
        verify::check_povm_identity(100, 1),
    };
    std::ostringstream s;
    bool ok = true;
    for (const auto& report : reports) {
      if (!report.passed || report.worst_slack < -1e-9) {
        ok = false;
        s << "[" << report.lemma << " slack=" << report.worst_slack << "]";
      }
    }
    if (ok) s << "all 8 suites clean";
    detail = s.str();
    return ok;
  }, 300.0);

  criterion(8, "lambert W and cutoff-dimension stationarity",
            [&](std::string& detail) {
    double worst = 0.0;
    for (double log10x = -6.0; log10x <= 30.0; log10x += 0.25) {
      const double x = std::pow(10.0, log10x);
      const double w = bounds::lambert_w0(x);
      worst = std::max(worst,
                       std::abs(w * std::exp(w) - x) / std::max(1.0, x));
    }
    if (worst > 1e-12) {
      detail = "residual " + std::to_string(worst);
      return false;
    }
    double worst_stationarity = 0.0;
    for (double omega : {0.2, 0.5, 1.0}) {
      for (double log10n : {10.0, 20.0, 30.0}) {
        const LogReal n = LogReal::from_ln(log10n * std::log(10.0));
        const double d =
            bounds::exp_cutoff_d_opt(omega, 2.0, n).lambert_form;
        const double h = 1.5e-6 * d;
        const auto f = [&](double x) {
          return bounds::exp_cutoff_zeta_real(x, omega, 2.0, n);
        };
        const double derivative = (f(d + h) - f(d - h)) / (2.0 * h);
        worst_stationarity =
            std::max(worst_stationarity, std::abs(derivative) / (f(d) / d));
      }
    }
    std::ostringstream s;
    s << "residual=" << worst << " stationarity=" << worst_stationarity;
    detail = s.str();
    return worst_stationarity <= 1e-8;
  });

  criterion(9, "command determinism", [&](std::string& detail) {
    if (cli_path.empty()) {
      detail = "no CLI path given";
      return false;
    }
    return run_cli_twice_identical("bound --thm 1 --nbar 1 --delta 0.01 --N 1e60",
                                   detail) &&
           run_cli_twice_identical("bound --thm 2 --nbar 1 --delta 0.01 --N 1e29",
                                   detail) &&
           run_cli_twice_identical("figure --id fig2", detail) &&
           run_cli_twice_identical("figure --id fig3 --format json", detail) &&
           run_cli_twice_identical("gaussian --nbar 1 --eps 0.5 --Omega 4",
                                   detail) &&
           run_cli_twice_identical(
               "gaussian --certify --samples 2000 --seed 1", detail) &&
           run_cli_twice_identical("verify --suite gentle --trials 50 --seed 1",
                                   detail);
  });

  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria failed\n", failures);
  return 1;
}
