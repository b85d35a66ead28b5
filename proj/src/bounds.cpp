#include "qdarwin/bounds.hpp"

#include <cmath>

namespace qdarwin::bounds {

namespace {

constexpr double kLn2 = 0.6931471805599453094172321214582;

void check_d(double d, double min_d, const char* what) {
  if (!(d >= min_d))
    throw InvalidParameter(std::string(what) + ": truncation dimension too small");
}

double zeta_impl(double d, double m, double nbar, LogReal n) {
  if (!(m >= 1.0)) throw InvalidParameter("mean_energy_zeta: m must be >= 1");
  if (nbar < 0.0) throw InvalidParameter("mean_energy_zeta: nbar must be >= 0");
  const double ln_d = std::log(d);
  const double sampling = std::exp(
      0.5 * (kLn2 + 6.0 * ln_d + std::log(ln_d) - std::log(m)));
  const double truncation = (nbar > 0.0)
      ? 4.0 * std::exp(0.5 * (std::log(nbar) - ln_d))
      : 0.0;
  const double markov = 2.0 * std::exp(std::log(m) - n.ln());
  return sampling + truncation + markov;
}

double f_impl(double d, double nbar, LogReal n) {
  const double ln_d = std::log(d);
  const double truncation = (nbar > 0.0)
      ? 4.0 * std::exp(0.5 * (std::log(nbar) - ln_d))
      : 0.0;
  const double sampling = std::exp(
      (std::log(27.0) + 6.0 * ln_d + std::log(ln_d) - n.ln()) / 3.0);
  return truncation + sampling;
}

} // namespace

double mean_energy_zeta(long long d, double m, double nbar, LogReal n) {
  check_d(static_cast<double>(d), 2.0, "mean_energy_zeta");
  return zeta_impl(static_cast<double>(d), m, nbar, n);
}

double mean_energy_zeta_real(double d, double m, double nbar, LogReal n) {
  check_d(d, 2.0, "mean_energy_zeta");
  return zeta_impl(d, m, nbar, n);
}

double mean_energy_m_opt(long long d, LogReal n) {
  check_d(static_cast<double>(d), 2.0, "mean_energy_m_opt");
  const double ln_d = std::log(static_cast<double>(d));
  const double ln_c = kLn2 + 6.0 * ln_d + std::log(ln_d);  // c = 2 d^6 ln d
  return std::exp((ln_c + 2.0 * n.ln() - std::log(16.0)) / 3.0);
}

double mean_energy_f(long long d, double nbar, LogReal n) {
  check_d(static_cast<double>(d), 2.0, "mean_energy_f");
  return f_impl(static_cast<double>(d), nbar, n);
}

double mean_energy_f_real(double d, double nbar, LogReal n) {
  if (!(d > 1.0)) throw InvalidParameter("mean_energy_f: d must exceed 1");
  return f_impl(d, nbar, n);
}

double mean_energy_analytic(double nbar, LogReal n, bool* degenerate) {
  if (degenerate) *degenerate = false;
  if (nbar < 0.0) throw InvalidParameter("mean_energy_analytic: nbar must be >= 0");
  if (nbar == 0.0) {
    // Limit value of the closed form; flagged so callers cannot mistake the
    // degenerate input for a meaningful optimum.
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  const double ln_value = (14.0 / 17.0) * std::log(2.0 / 7.0) +
                          (7.0 * std::log(nbar) - n.ln()) / 17.0;
  return 17.0 * std::exp(ln_value);
}

GibbsEntropy gibbs_entropy(double omega) {
  if (!(omega > 0.0)) throw InvalidParameter("gibbs_entropy: omega must be positive");
  const double mean = 1.0 / std::expm1(omega);
  const double entropy = (mean + 1.0) * std::log1p(mean) - mean * std::log(mean);
  return {mean, entropy};
}

ExpCutoffTerms exp_cutoff_terms(double omega, double Omega) {
  if (!(omega > 0.0)) throw InvalidParameter("exp_cutoff_terms: omega must be positive");
  if (!(Omega > 1.0)) throw InvalidParameter("exp_cutoff_terms: Omega must exceed 1");
  const GibbsEntropy gibbs = gibbs_entropy(omega);
  ExpCutoffTerms terms;
  terms.d_tilde = Omega / -std::expm1(-omega);  // Omega e^omega / (e^omega - 1)
  terms.mean_photons = gibbs.mean_photons;
  terms.entropy_nats = gibbs.entropy_nats;
  terms.entropy_bits = gibbs.entropy_nats / kLn2;
  const double w4 = omega * omega * omega * omega;
  terms.gamma1 = 2.0 * terms.d_tilde * terms.d_tilde * gibbs.entropy_nats / (3.0 * w4);
  terms.gamma2 = 3.0 * terms.d_tilde * w4 / (16.0 * gibbs.entropy_nats);
  return terms;
}

namespace {

double exp_zeta_impl(double d, double omega, double Omega, LogReal n) {
  const ExpCutoffTerms terms = exp_cutoff_terms(omega, Omega);
  const double ln_dt = std::log(terms.d_tilde);
  const double sampling = std::exp((std::log(27.0) + 2.0 * ln_dt +
                                    4.0 * std::log(d) +
                                    std::log(terms.entropy_nats) - n.ln()) / 3.0);
  const double truncation = 4.0 * std::exp(ln_dt - 0.5 * omega * d);
  return sampling + truncation;
}

} // namespace

double exp_cutoff_zeta(long long d, double omega, double Omega, LogReal n) {
  check_d(static_cast<double>(d), 1.0, "exp_cutoff_zeta");
  return exp_zeta_impl(static_cast<double>(d), omega, Omega, n);
}

double exp_cutoff_zeta_real(double d, double omega, double Omega, LogReal n) {
  check_d(d, 1e-9, "exp_cutoff_zeta");
  return exp_zeta_impl(d, omega, Omega, n);
}

CutoffDim exp_cutoff_d_opt(double omega, double Omega, LogReal n) {
  const ExpCutoffTerms terms = exp_cutoff_terms(omega, Omega);
  // The objective is A n^{-1/3} d^{4/3} + B e^{-omega d/2} with
  // A = (27 d_tilde^2 s)^{1/3}, B = 4 d_tilde; its stationary point is
  // d = 2 W(x) / (3 omega) at x = 81 B^3 n omega^4 / (1024 A^3) = gamma2 n.
  const double ln_x = std::log(terms.gamma2) + n.ln();
  if (!std::isfinite(ln_x))
    throw InvalidParameter("exp_cutoff_d_opt: nonpositive Lambert argument");
  double w;
  if (ln_x > 700.0) {
    // x overflows double; solve W + ln W = ln x by fixed point on ln scale.
    w = ln_x - std::log(ln_x);
    for (int i = 0; i < 64; ++i) {
      const double next = ln_x - std::log(w);
      if (std::abs(next - w) <= 1e-15 * w) { w = next; break; }
      w = next;
    }
  } else {
    w = lambert_w0(std::exp(ln_x));
  }
  CutoffDim out;
  out.lambert_form = 2.0 * w / (3.0 * omega);
  out.log_form = 2.0 * ln_x / (3.0 * omega);
  return out;
}

double exp_cutoff_closed(double omega, double Omega, LogReal n) {
  const ExpCutoffTerms terms = exp_cutoff_terms(omega, Omega);
  const double ln_g2n = std::log(terms.gamma2) + n.ln();
  if (!(ln_g2n > 0.0))
    throw DomainTooSmall("exp_cutoff_closed: requires gamma2 * n > 1");
  const double lead = 8.0 * std::exp((std::log(terms.gamma1) - n.ln()) / 3.0);
  return lead * (1.0 + 0.25 * std::pow(ln_g2n, 4.0 / 3.0));
}

double lambert_w0(double x) {
  constexpr double kInvE = 0.36787944117144232159552377016146;
  if (!(x >= -kInvE - 1e-15))
    throw DomainError("lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;

  double w;
  if (x > std::exp(1.0)) {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  } else if (x > -0.25) {
    w = (x < 1.0) ? x * (1.0 - x) : std::log1p(x);
    if (w <= -1.0) w = -0.9;
  } else {
    // near the branch point: series in p = sqrt(2 (e x + 1))
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::exp(1.0) * x + 1.0)));
    w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
  }

  for (int i = 0; i < 100; ++i) {
    const double ew = std::exp(w);
    const double resid = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = resid / (ew * wp1 - (w + 2.0) * resid / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

} // namespace qdarwin::bounds
