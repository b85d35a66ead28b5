#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qdarwin/bounds.hpp"
#include "qdarwin/gaussian.hpp"
#include "qdarwin/optimizer.hpp"
#include "qdarwin/runconfig.hpp"
#include "qdarwin/verify.hpp"

namespace {

using namespace qdarwin;

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return kExitIo;
  }
  out << text;
  if (!out) {
    std::cerr << "error: write to " << path << " failed\n";
    return kExitIo;
  }
  return kExitOk;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QDARWIN_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 1;
}

struct BoundPins {
  long long d = 0;   // 0 means free
  double m = 0.0;    // 0 means free
  double omega = 0.0;
  double Omega = 0.0;
};

int run_bound(const cli::RunConfig& config, const BoundPins& pins) {
  const LogReal n = LogReal::parse(config.n_text);
  std::ostringstream out;
  out << "theorem=" << config.theorem << "\n";
  out << "nbar=" << cli::format_number(config.nbar) << "\n";
  out << "delta=" << cli::format_number(config.delta) << "\n";
  out << "N=" << n.str() << "\n";
  if (config.theorem == 1) {
    const double analytic = bounds::mean_energy_analytic(config.nbar, n);
    long long d = pins.d;
    double m = pins.m, zeta = 0.0;
    if (d > 0) {
      if (m <= 0.0) {
        m = std::max(1.0, std::round(bounds::mean_energy_m_opt(d, n)));
        m = std::min(m, std::max(1.0, std::floor(n.value())));
      }
      zeta = bounds::mean_energy_zeta(d, m, config.nbar, n);
    } else {
      const optim::MeanEnergyMin opt = optim::minimize_mean_energy(config.nbar, n);
      d = opt.d;
      m = opt.m;
      zeta = opt.zeta;
    }
    out << "analytic_zeta=" << cli::format_number(analytic) << "\n";
    out << "analytic_value=" << cli::format_number(analytic / config.delta) << "\n";
    out << "numeric_zeta=" << cli::format_number(zeta) << "\n";
    out << "numeric_value=" << cli::format_number(zeta / config.delta) << "\n";
    out << "d=" << d << "\n";
    out << "m=" << cli::format_number(m) << "\n";
  } else if (config.theorem == 2) {
    optim::ExpCutoffMin numeric;
    if (pins.omega > 0.0 && pins.Omega > 1.0) {
      numeric.omega = pins.omega;
      numeric.Omega = pins.Omega;
      numeric.epsilon = std::numeric_limits<double>::quiet_NaN();
      numeric.route = "pinned";
      if (pins.d > 0) {
        numeric.d = pins.d;
      } else {
        const auto seed = bounds::exp_cutoff_d_opt(pins.omega, pins.Omega, n);
        long long best_d = 1;
        double best = std::numeric_limits<double>::infinity();
        const long long center =
            std::max(1LL, std::llround(seed.lambert_form));
        for (long long d = std::max(1LL, center / 2); d <= 2 * center + 40; ++d) {
          const double z = bounds::exp_cutoff_zeta(d, pins.omega, pins.Omega, n);
          if (z < best) { best = z; best_d = d; }
        }
        numeric.d = best_d;
      }
      numeric.zeta =
          bounds::exp_cutoff_zeta(numeric.d, pins.omega, pins.Omega, n);
    } else {
      numeric = optim::minimize_exp_cutoff(config.nbar, n);
    }
    double closed = std::numeric_limits<double>::quiet_NaN();
    try {
      closed = bounds::exp_cutoff_closed(numeric.omega, numeric.Omega, n);
    } catch (const DomainTooSmall&) {
    }
    if (!std::isnan(closed)) {
      out << "closed_zeta=" << cli::format_number(closed) << "\n";
      out << "closed_value=" << cli::format_number(closed / config.delta) << "\n";
    }
    out << "numeric_zeta=" << cli::format_number(numeric.zeta) << "\n";
    out << "numeric_value=" << cli::format_number(numeric.zeta / config.delta) << "\n";
    if (!std::isnan(numeric.epsilon))
      out << "epsilon=" << cli::format_number(numeric.epsilon) << "\n";
    out << "omega=" << cli::format_number(numeric.omega) << "\n";
    out << "Omega=" << cli::format_number(numeric.Omega) << "\n";
    out << "d=" << numeric.d << "\n";
    out << "route=" << numeric.route << "\n";
  } else {
    throw InvalidParameter("bound: theorem must be 1 or 2");
  }
  return write_output(config.out, out.str());
}

int run_figure(const cli::RunConfig& config) {
  std::vector<optim::SweepRow> rows;
  optim::PowerLawFit fit;
  if (config.figure == "fig2") {
    const auto grid =
        cli::grid_from_spec(config.grid, optim::default_mean_energy_grid());
    rows = optim::sweep_mean_energy(config.nbar, config.delta, grid);
  } else if (config.figure == "fig3") {
    const auto grid =
        cli::grid_from_spec(config.grid, optim::default_exp_cutoff_grid());
    rows = optim::sweep_exp_cutoff(config.nbar, config.delta, grid);
  } else {
    throw InvalidParameter("figure: id must be fig2 or fig3");
  }
  std::vector<std::pair<LogReal, double>> samples;
  for (const auto& row : rows) samples.emplace_back(row.n, row.bound_numeric);
  fit = optim::power_law_fit(samples, config.delta);

  std::string text;
  if (config.format == "json") {
    text = cli::fig_json(config.figure, rows, fit);
  } else if (config.format == "csv") {
    text = (config.figure == "fig2") ? cli::fig2_csv(rows, fit)
                                     : cli::fig3_csv(rows, fit);
  } else {
    throw InvalidParameter("figure: format must be csv or json");
  }
  return write_output(config.out, text);
}

int run_gaussian(const cli::RunConfig& config) {
  std::ostringstream out;
  if (config.certify) {
    const gaussian::CertifyReport report = gaussian::certify_set(
        config.nbar, config.eps, config.Omega, config.samples, config.seed);
    out << "omega=" << cli::format_number(report.omega) << "\n";
    out << "Omega=" << cli::format_number(report.Omega) << "\n";
    out << "samples=" << report.samples << "\n";
    out << "violations=" << report.violations << "\n";
    out << "worst_moment=" << cli::format_number(report.worst_moment) << "\n";
    out << "seed=" << report.seed << "\n";
    out << "all_pass=" << (report.all_pass ? "true" : "false") << "\n";
    const int code = write_output(config.out, out.str());
    if (code != kExitOk) return code;
    return report.all_pass ? kExitOk : kExitCounterexample;
  }

  if (config.omega > 0.0) {
    const gaussian::GaussianState state(
        {config.alpha_re, config.alpha_im}, config.thermal, config.squeeze);
    const gaussian::CutoffReport report =
        gaussian::exp_moment(state, config.omega, config.Omega);
    out << "omega=" << cli::format_number(report.omega) << "\n";
    out << "feasible=" << (report.feasible ? "true" : "false") << "\n";
    if (report.feasible) {
      out << "kappa_plus=" << cli::format_number(report.kappa_plus) << "\n";
      out << "kappa_minus=" << cli::format_number(report.kappa_minus) << "\n";
      out << "moment=" << cli::format_number(report.moment) << "\n";
      out << "satisfies_Omega=" << (report.satisfies_Omega ? "true" : "false")
          << "\n";
    }
    out << "mean_photon=" << cli::format_number(state.mean_photon()) << "\n";
    return write_output(config.out, out.str());
  }

  const double omega = gaussian::cutoff_params(config.nbar, config.eps, config.Omega);
  out << "nbar=" << cli::format_number(config.nbar) << "\n";
  out << "eps=" << cli::format_number(config.eps) << "\n";
  out << "Omega=" << cli::format_number(config.Omega) << "\n";
  out << "omega=" << cli::format_number(omega) << "\n";
  return write_output(config.out, out.str());
}

int run_verify(const cli::RunConfig& config) {
  using Check = verify::LemmaReport (*)(int, std::uint64_t, const verify::Tolerances&);
  struct Suite {
    const char* name;
    Check run;
  };
  const verify::Tolerances tol{config.tol_inequality, config.tol_identity};
  static const auto gentle = [](int t, std::uint64_t s, const verify::Tolerances& tl) {
    return verify::check_gentle_measurement(t, 4, s, tl);
  };
  static const auto fock_trunc = [](int t, std::uint64_t s,
                                    const verify::Tolerances& tl) {
    return verify::check_fock_truncation(t, 5, 3, s, tl);
  };
  const Suite suites[] = {
      {"gentle", +gentle},
      {"fock-truncation", +fock_trunc},
      {"cj-truncation", &verify::check_cj_truncation},
      {"ecd-choi-bound", &verify::check_ecd_choi_bound},
      {"expcut-choi-bound", &verify::check_expcut_choi_bound},
      {"mutual-info", &verify::check_mutual_info_bound},
      {"norm-axioms", &verify::check_norm_axioms},
      {"povm", &verify::check_povm_identity},
  };

  std::vector<verify::LemmaReport> reports;
  bool found = false;
  for (const Suite& suite : suites) {
    if (config.suite == "all" || config.suite == suite.name) {
      found = true;
      reports.push_back(suite.run(static_cast<int>(config.trials), config.seed, tol));
    }
  }
  if (!found) throw InvalidParameter("verify: unknown suite " + config.suite);

  nlohmann::ordered_json j;
  j["suite"] = config.suite;
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  bool all_passed = true;
  std::string worst_failure;
  for (const auto& report : reports) {
    array.push_back(nlohmann::ordered_json::parse(verify::to_json(report)));
    if (!report.passed) {
      all_passed = false;
      worst_failure = report.lemma + ": " + report.worst_params;
    }
  }
  j["reports"] = std::move(array);
  j["all_passed"] = all_passed;

  const int code = write_output(config.out, j.dump(2) + "\n");
  if (code != kExitOk) return code;
  if (!all_passed) {
    std::cerr << "counterexample: " << worst_failure << "\n";
    return kExitCounterexample;
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"objectivity bounds for infinite-dimensional quantum Darwinism"};
  app.require_subcommand(1);

  cli::RunConfig config;
  config.seed = default_seed();
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file")
      ->each([&](const std::string& path) {
        config = cli::parse_config_file(path, config);
      });

  BoundPins pins;
  CLI::App* bound = app.add_subcommand("bound", "evaluate one bound query");
  bound->add_option("--thm", config.theorem, "theorem selector (1 or 2)");
  bound->add_option("--nbar", config.nbar, "mean photon number");
  bound->add_option("--delta", config.delta, "excluded observer fraction");
  bound->add_option("--N", config.n_text, "fragment count (scientific notation)");
  bound->add_option("--d", pins.d, "pin the truncation dimension");
  bound->add_option("--m", pins.m, "pin the sampling count (theorem 1)");
  bound->add_option("--omega", pins.omega, "pin the cutoff rate (theorem 2)");
  bound->add_option("--Omega", pins.Omega, "pin the cutoff threshold (theorem 2)");
  bound->add_option("--out", config.out, "output path (default stdout)");

  CLI::App* figure = app.add_subcommand("figure", "sweep a bound over N and fit");
  figure->add_option("--id", config.figure, "fig2 or fig3");
  figure->add_option("--nbar", config.nbar, "mean photon number");
  figure->add_option("--delta", config.delta, "excluded observer fraction");
  figure->add_option("--grid", config.grid, "log10min:log10max:points");
  figure->add_option("--format", config.format, "csv or json");
  figure->add_option("--out", config.out, "output path (default stdout)");

  CLI::App* gauss = app.add_subcommand("gaussian", "exponential cutoff queries");
  gauss->add_option("--alpha-re", config.alpha_re, "Re(alpha)");
  gauss->add_option("--alpha-im", config.alpha_im, "Im(alpha)");
  gauss->add_option("--m", config.thermal, "thermal photon number");
  gauss->add_option("--r", config.squeeze, "squeezing parameter");
  gauss->add_option("--omega", config.omega, "cutoff rate (moment query)");
  gauss->add_option("--Omega", config.Omega, "cutoff threshold");
  gauss->add_option("--nbar", config.nbar, "energy budget for cutoff-params");
  gauss->add_option("--eps", config.eps, "cutoff-params tuning parameter");
  gauss->add_flag("--certify", config.certify, "sample the bounded-energy set");
  gauss->add_option("--samples", config.samples, "certification sample count");
  gauss->add_option("--seed", config.seed, "random seed");
  gauss->add_option("--out", config.out, "output path (default stdout)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run lemma trial suites");
  verify_cmd->add_option("--suite", config.suite, "suite name or all");
  verify_cmd->add_option("--trials", config.trials, "trials per suite");
  verify_cmd->add_option("--seed", config.seed, "random seed");
  verify_cmd->add_option("--tol-inequality", config.tol_inequality,
                         "allowed inequality slack");
  verify_cmd->add_option("--tol-identity", config.tol_identity,
                         "allowed identity residual");
  verify_cmd->add_option("--out", config.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (bound->parsed()) { config.command = "bound"; return run_bound(config, pins); }
    if (figure->parsed()) { config.command = "figure"; return run_figure(config); }
    if (gauss->parsed()) { config.command = "gaussian"; return run_gaussian(config); }
    if (verify_cmd->parsed()) { config.command = "verify"; return run_verify(config); }
  } catch (const qdarwin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
