#include "qdarwin/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdarwin/gaussian.hpp"

namespace qdarwin::optim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol) {
  if (!(a < b)) throw InvalidInterval("golden_section: requires a < b");
  if (!(tol > 0.0)) throw InvalidParameter("golden_section: tol must be positive");
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

long long integer_argmin(const std::function<double(long long)>& f,
                         const std::vector<long long>& candidates) {
  if (candidates.empty())
    throw InvalidInterval("integer_argmin: empty candidate set");
  long long best = candidates.front();
  double best_value = f(best);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = f(candidates[i]);
    if (v < best_value) { best_value = v; best = candidates[i]; }
  }
  return best;
}

MeanEnergyMin minimize_mean_energy(double nbar, LogReal n) {
  if (!(n.ln() >= 0.0))
    throw InvalidParameter("minimize_mean_energy: requires n >= 1");
  if (nbar < 0.0)
    throw InvalidParameter("minimize_mean_energy: nbar must be >= 0");

  // coarse log-spaced scan of the m-optimized objective over integer d
  const double ln_lo = std::log(2.0);
  const double ln_hi = std::max(std::log(64.0), (2.0 / 17.0) * n.ln() + 6.0);
  const int points = 600;
  long long best_d = 2;
  double best_f = kInf;
  long long previous = 0;
  for (int i = 0; i <= points; ++i) {
    const double t = ln_lo + (ln_hi - ln_lo) * i / points;
    const long long d = std::llround(std::exp(t));
    if (d < 2 || d == previous) continue;
    previous = d;
    const double v = bounds::mean_energy_f(d, nbar, n);
    if (v < best_f) { best_f = v; best_d = d; }
  }

  // local integer descent around the coarse winner
  while (best_d > 2 &&
         bounds::mean_energy_f(best_d - 1, nbar, n) < best_f) {
    --best_d;
    best_f = bounds::mean_energy_f(best_d, nbar, n);
  }
  while (bounds::mean_energy_f(best_d + 1, nbar, n) < best_f) {
    ++best_d;
    best_f = bounds::mean_energy_f(best_d, nbar, n);
  }

  MeanEnergyMin out;
  out.d = best_d;
  out.zeta = best_f;
  out.m = bounds::mean_energy_m_opt(best_d, n);

  // integer m refinement near the stationary point, capped to [1, n];
  // astronomically large m stays continuous (rounding is vacuous there)
  const double n_value = n.value();
  const double m_cap = std::isfinite(n_value) ? std::floor(n_value) : kInf;
  if (out.m < 9e15) {
    const long long center = std::llround(std::min(out.m, 9e15));
    double best_zeta = kInf;
    long long best_m = 0;
    for (long long m = std::max(1LL, center - 2); m <= center + 2; ++m) {
      if (static_cast<double>(m) > m_cap) break;
      const double z = bounds::mean_energy_zeta(best_d, static_cast<double>(m),
                                                nbar, n);
      if (z < best_zeta) { best_zeta = z; best_m = m; }
    }
    if (best_m > 0) {
      out.m = static_cast<double>(best_m);
      out.zeta = std::min(out.zeta, best_zeta);
    }
  }
  return out;
}

namespace {

struct InnerMin {
  long long d = 1;
  double zeta = kInf;
};

// Integer-d minimum of the exponential-cutoff objective, seeded at the
// Lambert-W stationary point and guarded by a full window scan (with a
// stride pass first when the window is very wide).
InnerMin best_integer_d(double omega, double Omega, LogReal n) {
  const bounds::CutoffDim seed = bounds::exp_cutoff_d_opt(omega, Omega, n);
  const double center = std::max(1.0, seed.lambert_form);
  long long lo = std::max(1LL, static_cast<long long>(std::floor(0.5 * center)) - 2);
  long long hi = static_cast<long long>(std::ceil(1.7 * center)) + 40;

  InnerMin out;
  const long long stride = std::max(1LL, (hi - lo) / 4000);
  for (long long d = lo; d <= hi; d += stride) {
    const double z = bounds::exp_cutoff_zeta(d, omega, Omega, n);
    if (z < out.zeta) { out.zeta = z; out.d = d; }
  }
  if (stride > 1) {
    const long long rlo = std::max(1LL, out.d - stride);
    const long long rhi = out.d + stride;
    for (long long d = rlo; d <= rhi; ++d) {
      const double z = bounds::exp_cutoff_zeta(d, omega, Omega, n);
      if (z < out.zeta) { out.zeta = z; out.d = d; }
    }
  }
  return out;
}

} // namespace

ExpCutoffMin minimize_exp_cutoff(double nbar, LogReal n,
                                 const ExpCutoffOptions& options) {
  if (!(nbar > 0.0))
    throw InvalidParameter("minimize_exp_cutoff: requires nbar > 0");

  ExpCutoffMin best;
  best.zeta = kInf;
  bool any_feasible = false;

  if (options.cutoff_params_family) {
    const auto evaluate_eps = [&](double eps, double factor) -> double {
      const double Omega = factor / (1.0 - eps);
      double omega;
      try {
        omega = gaussian::cutoff_params(nbar, eps, Omega);
      } catch (const InvalidParameter&) {
        return kInf;
      }
      if (!(omega > 0.0)) return kInf;
      const InnerMin inner = best_integer_d(omega, Omega, n);
      if (inner.zeta < best.zeta) {
        best = {eps, omega, Omega, inner.d, inner.zeta, "cutoff-params"};
      }
      return inner.zeta;
    };

    const int pts = std::max(2, options.eps_points);
    const double eps_lo = 0.02, eps_hi = 0.98;
    double grid_best_eps = eps_lo;
    double grid_best_factor = options.omega_factors.front();
    double grid_best_value = kInf;
    for (int i = 0; i < pts; ++i) {
      const double eps = eps_lo + (eps_hi - eps_lo) * i / (pts - 1);
      for (double factor : options.omega_factors) {
        const double v = evaluate_eps(eps, factor);
        if (v < grid_best_value) {
          grid_best_value = v;
          grid_best_eps = eps;
          grid_best_factor = factor;
        }
      }
    }
    if (std::isfinite(grid_best_value)) {
      any_feasible = true;
      const double step = (eps_hi - eps_lo) / (pts - 1);
      const double a = std::max(eps_lo, grid_best_eps - step);
      const double b = std::min(eps_hi, grid_best_eps + step);
      golden_section([&](double eps) { return evaluate_eps(eps, grid_best_factor); },
                     a, b, 1e-4);
    }
  }

  if (options.worst_moment_family) {
    const double omega_cap = gaussian::max_feasible_omega(nbar);
    const auto evaluate_omega = [&](double omega) -> double {
      if (!(omega > 0.0) || omega >= omega_cap) return kInf;
      const double Omega = gaussian::worst_moment(omega, nbar) * (1.0 + 1e-9);
      if (!std::isfinite(Omega) || !(Omega > 1.0)) return kInf;
      const InnerMin inner = best_integer_d(omega, Omega, n);
      if (inner.zeta < best.zeta) {
        best = {kNaN, omega, Omega, inner.d, inner.zeta, "worst-moment"};
      }
      return inner.zeta;
    };

    const int pts = std::max(4, options.omega_points);
    double grid_best_omega = 0.0;
    double grid_best_value = kInf;
    for (int i = 1; i <= pts; ++i) {
      const double omega = omega_cap * i / (pts + 1);
      const double v = evaluate_omega(omega);
      if (v < grid_best_value) { grid_best_value = v; grid_best_omega = omega; }
    }
    if (std::isfinite(grid_best_value)) {
      any_feasible = true;
      const double step = omega_cap / (pts + 1);
      golden_section(evaluate_omega, std::max(step * 0.5, grid_best_omega - step),
                     std::min(omega_cap * (1.0 - 1e-9), grid_best_omega + step),
                     1e-6 * omega_cap);
    }
  }

  if (!any_feasible)
    throw NoFeasiblePoint("minimize_exp_cutoff: no feasible (omega, Omega) found");
  return best;
}

std::vector<LogReal> log_grid(double log10_min, double log10_max, int points) {
  if (points < 1) throw InvalidParameter("log_grid: need at least one point");
  if (points == 1) return {LogReal::from_ln(log10_min * std::log(10.0))};
  std::vector<LogReal> grid;
  grid.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double l10 = log10_min + (log10_max - log10_min) * i / (points - 1);
    grid.push_back(LogReal::from_ln(l10 * std::log(10.0)));
  }
  return grid;
}

std::vector<LogReal> default_mean_energy_grid() { return log_grid(12, 60, 13); }
std::vector<LogReal> default_exp_cutoff_grid() { return log_grid(17, 29, 13); }

std::vector<SweepRow> sweep_mean_energy(double nbar, double delta,
                                        const std::vector<LogReal>& grid) {
  if (!(delta > 0.0 && delta < 1.0))
    throw InvalidParameter("sweep_mean_energy: delta must lie in (0, 1)");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const LogReal& n : grid) {
    const MeanEnergyMin opt = minimize_mean_energy(nbar, n);
    SweepRow row;
    row.n = n;
    row.bound_analytic = bounds::mean_energy_analytic(nbar, n) / delta;
    row.bound_numeric = opt.zeta / delta;
    row.d = opt.d;
    row.m = opt.m;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> sweep_exp_cutoff(double nbar, double delta,
                                       const std::vector<LogReal>& grid,
                                       const ExpCutoffOptions& options) {
  if (!(delta > 0.0 && delta < 1.0))
    throw InvalidParameter("sweep_exp_cutoff: delta must lie in (0, 1)");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const LogReal& n : grid) {
    const ExpCutoffMin opt = minimize_exp_cutoff(nbar, n, options);
    SweepRow row;
    row.n = n;
    try {
      row.bound_analytic = bounds::exp_cutoff_closed(opt.omega, opt.Omega, n) / delta;
    } catch (const DomainTooSmall&) {
      row.bound_analytic = kNaN;
    }
    row.bound_numeric = opt.zeta / delta;
    row.d = opt.d;
    row.epsilon = opt.epsilon;
    row.omega = opt.omega;
    row.Omega = opt.Omega;
    row.route = opt.route;
    rows.push_back(std::move(row));
  }
  return rows;
}

PowerLawFit power_law_fit(const std::vector<std::pair<LogReal, double>>& rows,
                          double delta) {
  if (rows.size() < 3)
    throw InvalidData("power_law_fit: need at least three rows");
  if (!(delta > 0.0))
    throw InvalidParameter("power_law_fit: delta must be positive");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, bound] : rows) {
    if (!(bound > 0.0) || !std::isfinite(bound))
      throw InvalidData("power_law_fit: bounds must be positive and finite");
    const double x = n.ln();
    const double y = std::log(delta * bound);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double count = static_cast<double>(rows.size());
  const double denom = count * sxx - sx * sx;
  if (std::abs(denom) < 1e-12)
    throw InvalidData("power_law_fit: degenerate abscissae");
  const double slope = (count * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / count;
  if (!(slope < 0.0))
    throw InvalidData("power_law_fit: data do not decay with n");

  double ss = 0.0;
  for (const auto& [n, bound] : rows) {
    const double r = std::log(delta * bound) - (intercept + slope * n.ln());
    ss += r * r;
  }

  PowerLawFit fit;
  fit.alpha = -1.0 / slope;
  fit.beta = std::exp(intercept);
  fit.rms_log = std::sqrt(ss / count);
  return fit;
}

} // namespace qdarwin::optim
