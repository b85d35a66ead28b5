#include "qdarwin/gaussian.hpp"

#include <algorithm>
#include <cmath>

namespace qdarwin::gaussian {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double coth_half(double omega) {
  return 1.0 / std::tanh(0.5 * omega);
}

// Worst value of (2m+1) e^{2r} over the energy budget; attained by the
// squeezed vacuum spending the whole budget on r.
double squeeze_factor_cap(double nbar) {
  return 1.0 + 2.0 * nbar + 2.0 * std::sqrt(nbar * (nbar + 1.0));
}

} // namespace

GaussianState::GaussianState(std::complex<double> alpha_in, double m_in, double r_in)
    : alpha(alpha_in), thermal_photons(m_in), squeezing(r_in) {
  if (!(thermal_photons >= 0.0))
    throw InvalidParameter("GaussianState: thermal photon number must be >= 0");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
      !std::isfinite(squeezing))
    throw InvalidParameter("GaussianState: non-finite parameter");
  if (squeezing < 0.0) {
    squeezing = -squeezing;
    alpha = std::complex<double>(alpha.imag(), -alpha.real());
  }
}

std::array<double, 2> GaussianState::displacement() const {
  const double s = std::sqrt(2.0);
  return {s * alpha.real(), s * alpha.imag()};
}

std::array<double, 2> GaussianState::covariance_diag() const {
  const double t = 2.0 * thermal_photons + 1.0;
  return {std::exp(2.0 * squeezing) * t, std::exp(-2.0 * squeezing) * t};
}

double GaussianState::mean_photon() const {
  return std::norm(alpha) + thermal_photons * std::cosh(2.0 * squeezing) +
         std::sinh(squeezing) * std::sinh(squeezing);
}

double mean_photon(const GaussianState& g) { return g.mean_photon(); }

CutoffReport exp_moment(const GaussianState& g, double omega, double Omega) {
  if (!(omega > 0.0)) throw InvalidParameter("exp_moment: omega must be positive");
  CutoffReport report;
  report.omega = omega;
  report.Omega = Omega;

  const double cth = coth_half(omega);
  const double t = 2.0 * g.thermal_photons + 1.0;
  const double kp2 = cth - t * std::exp(2.0 * g.squeezing);
  const double km2 = cth - t * std::exp(-2.0 * g.squeezing);

  if (kp2 <= 0.0) {
    report.kappa_plus = kNaN;
    report.kappa_minus = (km2 > 0.0) ? std::sqrt(km2) : kNaN;
    report.moment = kInf;
    report.feasible = false;
    report.satisfies_Omega = false;
    return report;
  }

  report.kappa_plus = std::sqrt(kp2);
  report.kappa_minus = std::sqrt(km2);
  report.feasible = true;
  const double re2 = g.alpha.real() * g.alpha.real();
  const double im2 = g.alpha.imag() * g.alpha.imag();
  report.moment = 2.0 * std::exp(2.0 * re2 / kp2 + 2.0 * im2 / km2) /
                  (std::expm1(omega) * report.kappa_plus * report.kappa_minus);
  report.satisfies_Omega = std::isfinite(Omega) && report.moment <= Omega;
  return report;
}

double cutoff_params(double nbar, double eps, double Omega) {
  if (!(nbar >= 0.0)) throw InvalidParameter("cutoff_params: nbar must be >= 0");
  if (!(eps > 0.0 && eps < 1.0))
    throw InvalidParameter("cutoff_params: eps must lie in (0, 1)");
  if (!(Omega > 1.0 / (1.0 - eps)))
    throw InvalidParameter("cutoff_params: requires Omega > 1/(1-eps)");
  const double energy_branch = 2.0 * eps / (1.5 + 2.0 * nbar * (2.0 + nbar));
  if (nbar == 0.0) return energy_branch;
  const double moment_branch =
      (1.0 - eps) / nbar * std::log((1.0 - eps) * Omega);
  const double omega = std::min(energy_branch, moment_branch);
  // energy_branch < 2 eps / 1.5 < 2, as required by coth(omega/2) > 2/omega.
  return omega;
}

GaussianState sample_bounded_energy(double nbar, RngStream& rng) {
  if (!(nbar >= 0.0))
    throw InvalidParameter("sample_bounded_energy: nbar must be >= 0");
  if (nbar == 0.0) return GaussianState({0.0, 0.0}, 0.0, 0.0);
  const double r_max = std::asinh(std::sqrt(nbar));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double m = rng.uniform(0.0, nbar);
    const double r = rng.uniform(0.0, r_max);
    const double used = m * std::cosh(2.0 * r) + std::sinh(r) * std::sinh(r);
    if (used > nbar) continue;
    const double amp2 = rng.uniform(0.0, nbar - used);
    const double phase = rng.uniform(0.0, 6.283185307179586476925286766559);
    const std::complex<double> alpha =
        std::sqrt(amp2) * std::complex<double>(std::cos(phase), std::sin(phase));
    return GaussianState(alpha, m, r);
  }
  throw SamplerError("sample_bounded_energy: rejection sampler exhausted");
}

CertifyReport certify_set(double nbar, double eps, double Omega, long samples,
                          std::uint64_t seed) {
  if (samples < 1) throw InvalidParameter("certify_set: need at least one sample");
  const double omega = cutoff_params(nbar, eps, Omega);
  CertifyReport report;
  report.samples = samples;
  report.omega = omega;
  report.Omega = Omega;
  report.seed = seed;
  report.worst_moment = 1.0;

  const double factor_cap = 1.5 + 2.0 * nbar * (2.0 + nbar);
  for (long i = 0; i < samples; ++i) {
    RngStream rng = RngStream::for_trial(seed, static_cast<std::uint64_t>(i));
    const GaussianState g = sample_bounded_energy(nbar, rng);
    // byproduct of the energy budget, used by the parameter selection
    const double factor = (2.0 * g.thermal_photons + 1.0) *
                          std::exp(2.0 * g.squeezing);
    if (factor > factor_cap * (1.0 + 1e-12))
      throw SamplerError("certify_set: sampled state violates the squeeze cap");
    const CutoffReport m = exp_moment(g, omega, Omega);
    if (!m.feasible || m.moment > Omega) ++report.violations;
    if (m.feasible) report.worst_moment = std::max(report.worst_moment, m.moment);
    else report.worst_moment = kInf;
  }
  report.all_pass = (report.violations == 0);
  return report;
}

double max_feasible_omega(double nbar) {
  if (!(nbar >= 0.0)) throw InvalidParameter("max_feasible_omega: nbar must be >= 0");
  if (nbar == 0.0) return kInf;  // vacuum only; every omega works
  const double cap = squeeze_factor_cap(nbar);
  return 2.0 * std::atanh(1.0 / cap);
}

namespace {

// Moment with the whole displacement budget on the real quadrature (kappa_+
// is the smaller denominator, so this is the worst split).
double boundary_moment(double m, double r, double omega, double nbar) {
  const double used = m * std::cosh(2.0 * r) + std::sinh(r) * std::sinh(r);
  if (used > nbar) return -kInf;
  const double cth = coth_half(omega);
  const double t = 2.0 * m + 1.0;
  const double kp2 = cth - t * std::exp(2.0 * r);
  const double km2 = cth - t * std::exp(-2.0 * r);
  if (kp2 <= 0.0) return kInf;
  const double amp2 = nbar - used;
  return 2.0 * std::exp(2.0 * amp2 / kp2) /
         (std::expm1(omega) * std::sqrt(kp2 * km2));
}

} // namespace

double worst_moment(double omega, double nbar) {
  if (!(omega > 0.0)) throw InvalidParameter("worst_moment: omega must be positive");
  if (!(nbar >= 0.0)) throw InvalidParameter("worst_moment: nbar must be >= 0");
  if (nbar == 0.0) return 1.0;
  if (omega >= max_feasible_omega(nbar)) return kInf;

  const double r_max = std::asinh(std::sqrt(nbar));
  const int grid = 96;
  double best = 1.0;
  double best_m = 0.0, best_r = 0.0;
  for (int im = 0; im <= grid; ++im) {
    const double m = nbar * im / grid;
    for (int ir = 0; ir <= grid; ++ir) {
      const double r = r_max * ir / grid;
      const double v = boundary_moment(m, r, omega, nbar);
      if (v > best) { best = v; best_m = m; best_r = r; }
    }
  }
  if (!std::isfinite(best)) return kInf;

  // coordinate golden refinement around the grid optimum
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double m = best_m, r = best_r;
  double span_m = nbar / grid, span_r = r_max / grid;
  for (int round = 0; round < 8; ++round) {
    {
      double lo = std::max(0.0, m - span_m), hi = std::min(nbar, m + span_m);
      for (int it = 0; it < 40; ++it) {
        const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        if (boundary_moment(x1, r, omega, nbar) >=
            boundary_moment(x2, r, omega, nbar)) hi = x2; else lo = x1;
      }
      m = 0.5 * (lo + hi);
    }
    {
      double lo = std::max(0.0, r - span_r), hi = std::min(r_max, r + span_r);
      for (int it = 0; it < 40; ++it) {
        const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
        if (boundary_moment(m, x1, omega, nbar) >=
            boundary_moment(m, x2, omega, nbar)) hi = x2; else lo = x1;
      }
      r = 0.5 * (lo + hi);
    }
    span_m *= 0.5;
    span_r *= 0.5;
  }
  best = std::max(best, boundary_moment(m, r, omega, nbar));
  return best;
}

} // namespace qdarwin::gaussian
