#ifndef QDARWIN_BOUNDS_HPP
#define QDARWIN_BOUNDS_HPP

#include "qdarwin/errors.hpp"
#include "qdarwin/logreal.hpp"

namespace qdarwin::bounds {

// Scalar bound formulas for the two objectivity bounds: the mean-energy
// bound (CLI theorem 1) and the exponential-cutoff bound (CLI theorem 2).
// Every evaluator works in the log domain so fragment counts up to 1e300
// stay finite. Integer-d overloads are the public API; the *_real overloads
// exist only for relaxation cross-checks, since d is a truncation dimension.

// sqrt(2 d^6 ln d / m) + 4 sqrt(nbar/d) + 2 m / n.
// m is a count but accepted as a real: near-optimal values scale like
// n^{2/3} and exceed any integer type long before n = 1e300.
double mean_energy_zeta(long long d, double m, double nbar, LogReal n);
double mean_energy_zeta_real(double d, double m, double nbar, LogReal n);

// Stationary point (c n^2 / 16)^{1/3} of sqrt(c/m) + 2m/n at c = 2 d^6 ln d.
double mean_energy_m_opt(long long d, LogReal n);

// The m-optimized objective 4 sqrt(nbar/d) + (27 d^6 ln d / n)^{1/3}.
double mean_energy_f(long long d, double nbar, LogReal n);
double mean_energy_f_real(double d, double nbar, LogReal n);

// Closed form 17 (2/7)^{14/17} (nbar^7 / n)^{1/17}; the exact minimum of the
// ln d <= d relaxed objective. nbar = 0 returns 0 and sets *degenerate.
double mean_energy_analytic(double nbar, LogReal n, bool* degenerate = nullptr);

struct GibbsEntropy {
  double mean_photons;  // 1 / (e^omega - 1)
  double entropy_nats;  // (n+1) ln(n+1) - n ln n
};

GibbsEntropy gibbs_entropy(double omega);

struct ExpCutoffTerms {
  double d_tilde;       // Omega e^omega / (e^omega - 1)
  double mean_photons;  // Gibbs mean photons at this omega
  double entropy_nats;  // s
  double entropy_bits;  // s / ln 2
  double gamma1;        // 2 d_tilde^2 s / (3 omega^4)
  double gamma2;        // 3 d_tilde omega^4 / (16 s)
};

ExpCutoffTerms exp_cutoff_terms(double omega, double Omega);

// (27 d_tilde^2 d^4 s / n)^{1/3} + 4 d_tilde e^{-omega d / 2}.
double exp_cutoff_zeta(long long d, double omega, double Omega, LogReal n);
double exp_cutoff_zeta_real(double d, double omega, double Omega, LogReal n);

struct CutoffDim {
  double lambert_form;  // 2 W(gamma2 n) / (3 omega), the exact stationary point
  double log_form;      // 2 ln(gamma2 n) / (3 omega), valid for gamma2 n >> 1
};

CutoffDim exp_cutoff_d_opt(double omega, double Omega, LogReal n);

// 8 (gamma1/n)^{1/3} [1 + (ln(gamma2 n))^{4/3} / 4]; requires gamma2 n > 1.
double exp_cutoff_closed(double omega, double Omega, LogReal n);

// Principal branch, Halley iteration from a log-based seed;
// |W e^W - x| <= 1e-12 max(1, |x|).
double lambert_w0(double x);

} // namespace qdarwin::bounds

#endif
