#ifndef QDARWIN_OPTIMIZER_HPP
#define QDARWIN_OPTIMIZER_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qdarwin/bounds.hpp"
#include "qdarwin/logreal.hpp"

namespace qdarwin::optim {

// --- generic one-dimensional searches --------------------------------------

// Minimizer of f on [a, b] to within tol. f must be unimodal on the interval;
// that is the caller's responsibility.
double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol);

long long integer_argmin(const std::function<double(long long)>& f,
                         const std::vector<long long>& candidates);

// --- bound minimization -----------------------------------------------------

struct MeanEnergyMin {
  long long d = 2;     // optimal truncation dimension
  double m = 1.0;      // optimal sampling count (real-valued; scales like n^{2/3})
  double zeta = 0.0;   // minimized pre-delta bound
};

// Minimizes the m-optimized mean-energy objective over integer d >= 2
// (coarse log-spaced scan plus local integer descent), then refines an
// integer m near the stationary point, capped to [1, n]. Returns the smaller
// of the continuous-m and integer-m values.
MeanEnergyMin minimize_mean_energy(double nbar, LogReal n);

struct ExpCutoffOptions {
  // Route that follows the constructive (epsilon, Omega) parameter selection.
  bool cutoff_params_family = true;
  // Route that pins Omega to the exact worst-case Gaussian moment per omega.
  bool worst_moment_family = true;
  std::vector<double> omega_factors = {1.01, 1.1, 1.5, 2.0, 4.0, 10.0};
  int eps_points = 25;
  int omega_points = 96;
};

struct ExpCutoffMin {
  double epsilon = 0.0;  // NaN when the worst-moment route won
  double omega = 0.0;
  double Omega = 0.0;
  long long d = 1;
  double zeta = 0.0;
  std::string route;     // "cutoff-params" or "worst-moment"
};

// Minimizes the exponential-cutoff objective for Gaussian resources with
// mean photon number <= nbar. Candidate (omega, Omega) pairs come from two
// certified families: the constructive epsilon selection scanned over a
// coarse Omega grid above 1/(1-eps), and the exact worst-case moment of the
// bounded-energy Gaussian set. Integer d is minimized for each pair, seeded
// at the Lambert-W stationary point and guarded by a full window scan.
ExpCutoffMin minimize_exp_cutoff(double nbar, LogReal n,
                                 const ExpCutoffOptions& options = {});

// --- figure sweeps and fitting ----------------------------------------------

struct SweepRow {
  LogReal n;
  double bound_analytic = 0.0;  // delta-divided closed form
  double bound_numeric = 0.0;   // delta-divided numeric minimum
  long long d = 0;
  double m = 0.0;          // mean-energy sweeps
  double epsilon = 0.0;    // exponential-cutoff sweeps (NaN for worst-moment rows)
  double omega = 0.0;
  double Omega = 0.0;
  std::string route;
};

std::vector<LogReal> log_grid(double log10_min, double log10_max, int points);

std::vector<SweepRow> sweep_mean_energy(double nbar, double delta,
                                        const std::vector<LogReal>& grid);

std::vector<SweepRow> sweep_exp_cutoff(double nbar, double delta,
                                       const std::vector<LogReal>& grid,
                                       const ExpCutoffOptions& options = {});

// Default figure grids: 13 log-spaced points each. The mean-energy sweep
// spans 1e12..1e60; the exponential-cutoff sweep spans 1e17..1e29, the
// decades where that bound is nontrivial and close to a single power law.
std::vector<LogReal> default_mean_energy_grid();
std::vector<LogReal> default_exp_cutoff_grid();

struct PowerLawFit {
  double beta = 0.0;
  double alpha = 0.0;
  double rms_log = 0.0;  // rms residual of the log-log regression
};

// Least-squares fit of bound * delta = beta * n^{-1/alpha} in log-log space.
PowerLawFit power_law_fit(const std::vector<std::pair<LogReal, double>>& rows,
                          double delta);

} // namespace qdarwin::optim

#endif
