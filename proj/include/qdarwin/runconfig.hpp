#ifndef QDARWIN_RUNCONFIG_HPP
#define QDARWIN_RUNCONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qdarwin/optimizer.hpp"

namespace qdarwin::cli {

// Everything a command run depends on; round-trips losslessly through the
// key = value config format.
struct RunConfig {
  std::string command = "bound";
  int theorem = 1;
  double nbar = 1.0;
  double delta = 0.01;  // default used by both figure sweeps
  std::string n_text = "1e12";
  std::string figure = "fig2";
  std::string grid;  // "log10min:log10max:points"; empty uses the default
  std::string suite = "all";
  long long trials = 200;
  long long samples = 10000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";  // csv | json
  double tol_inequality = 1e-9;
  double tol_identity = 1e-10;
  // gaussian command parameters
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  double thermal = 0.0;
  double squeeze = 0.0;
  double omega = 0.0;    // 0 means "derive from (nbar, eps, Omega)"
  double Omega = 4.0;
  double eps = 0.5;
  bool certify = false;
};

void apply_key_value(RunConfig& config, const std::string& key,
                     const std::string& value);
RunConfig parse_config_file(const std::string& path, RunConfig base = {});
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
std::string serialize(const RunConfig& config);

// Fixed display contract for CSV/report output: 12 significant digits.
std::string format_number(double x);
// Lossless double formatting used by the config round-trip.
std::string format_exact(double x);

std::vector<LogReal> grid_from_spec(const std::string& spec,
                                    const std::vector<LogReal>& fallback);

std::string fig2_csv(const std::vector<optim::SweepRow>& rows,
                     const optim::PowerLawFit& fit);
std::string fig3_csv(const std::vector<optim::SweepRow>& rows,
                     const optim::PowerLawFit& fit);
std::string fig_json(const std::string& id,
                     const std::vector<optim::SweepRow>& rows,
                     const optim::PowerLawFit& fit);

} // namespace qdarwin::cli

#endif
