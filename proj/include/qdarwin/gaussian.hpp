#ifndef QDARWIN_GAUSSIAN_HPP
#define QDARWIN_GAUSSIAN_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

#include "qdarwin/errors.hpp"
#include "qdarwin/rng.hpp"

namespace qdarwin::gaussian {

// Single-mode Gaussian state: displacement amplitude alpha, mean thermal
// photons m, squeezing r. A negative input r is normalized away by a quarter
// phase rotation (which commutes with the number operator), swapping the
// quadrature roles; the stored r is always nonnegative.
struct GaussianState {
  std::complex<double> alpha{0.0, 0.0};
  double thermal_photons = 0.0;
  double squeezing = 0.0;

  GaussianState() = default;
  GaussianState(std::complex<double> alpha_in, double m_in, double r_in);

  std::array<double, 2> displacement() const;     // sqrt(2) {Re a, Im a}
  std::array<double, 2> covariance_diag() const;  // e^{+-2r} (2m+1)
  double mean_photon() const;                     // |a|^2 + m cosh 2r + sinh^2 r
};

struct CutoffReport {
  double omega = 0.0;
  double kappa_plus = 0.0;   // sqrt(coth(omega/2) - (2m+1) e^{+2r}); NaN if infeasible
  double kappa_minus = 0.0;
  double moment = 0.0;       // <e^{omega n}>; +inf when divergent
  bool feasible = false;
  double Omega = 0.0;        // threshold the report was checked against (NaN if none)
  bool satisfies_Omega = false;
};

double mean_photon(const GaussianState& g);

// Closed-form exponential moment of a Gaussian state. Reports infeasible
// (divergent moment) when coth(omega/2) <= (2m+1) e^{2r}.
CutoffReport exp_moment(const GaussianState& g, double omega,
                        double Omega = std::numeric_limits<double>::quiet_NaN());

// Cutoff rate min{ 2 eps / (3/2 + 2 nbar (2 + nbar)),
//                  (1 - eps)/nbar ln((1 - eps) Omega) } for the bounded-energy
// Gaussian set; requires Omega > 1/(1-eps). The result is always < 2.
double cutoff_params(double nbar, double eps, double Omega);

struct CertifyReport {
  long samples = 0;
  long violations = 0;
  double worst_moment = 0.0;
  double omega = 0.0;
  double Omega = 0.0;
  std::uint64_t seed = 0;
  bool all_pass = false;
};

// Samples Gaussian states with mean photon number <= nbar and checks the
// exponential moment at omega = cutoff_params(nbar, eps, Omega) against Omega.
CertifyReport certify_set(double nbar, double eps, double Omega, long samples,
                          std::uint64_t seed);

// Rejection sampler over (|alpha|^2, m, r) within the energy budget.
GaussianState sample_bounded_energy(double nbar, RngStream& rng);

// Largest omega for which every state with mean photon number <= nbar has a
// finite exponential moment: 2 atanh(1/K) at K = 1 + 2 nbar + 2 sqrt(nbar(nbar+1)).
double max_feasible_omega(double nbar);

// Supremum of <e^{omega n}> over the bounded-energy Gaussian set, computed
// from the closed form by constrained maximization over (|alpha|^2, m, r).
// Returns +inf for omega at or beyond max_feasible_omega(nbar).
double worst_moment(double omega, double nbar);

} // namespace qdarwin::gaussian

#endif
