#ifndef QDARWIN_FOCK_HPP
#define QDARWIN_FOCK_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qdarwin/errors.hpp"

namespace qdarwin::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Keep { SubsystemA, SubsystemB };
enum class GibbsMode { ExactTail, Renormalized };
enum class EntropyBase { Bits, Nats };

// Validation tolerances for density operators.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kEigenvalueTol = 1e-10;
inline constexpr double kTraceTol = 1e-12;

// Density operator on a truncated Fock space (levels 0..dim-1). The trace
// may deliberately stay below 1: truncated states keep their exact analytic
// coefficients unless renormalization is requested by the caller.
class FockState {
public:
  explicit FockState(Matrix rho);

  const Matrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  double trace() const { return rho_.trace().real(); }

  FockState renormalized() const;

private:
  struct Trusted {};
  FockState(Matrix rho, Trusted) : rho_(std::move(rho)) {}

  Matrix rho_;

  friend FockState trusted_state(Matrix rho);
};

// Internal factory for states valid by construction (skips the eigenvalue
// scan; hermiticity and finiteness are still checked).
FockState trusted_state(Matrix rho);

// Two-mode squeezed state with coefficients e^{-omega j/2}, truncated to
// `dim` Fock levels on each side. Kept unnormalized: the squared norm of the
// truncated ket is 1 - e^{-omega dim} by the closed geometric sum.
struct TwoModeSqueezed {
  double omega = 1.0;
  int dim = 1;

  TwoModeSqueezed(double omega_in, int dim_in);

  double normalization() const;     // sqrt(1 - e^{-omega})
  double coefficient(int j) const;  // normalization * e^{-omega j / 2}
  double norm2() const;             // 1 - e^{-omega dim}, closed form
  double mean_photons() const;      // local reduction: 1 / (e^omega - 1)
  Vector ket() const;               // on A (x) A', length dim*dim
  FockState projector() const;
};

// --- basic linear algebra -------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b);
Matrix number_operator(int dim);
Matrix level_projector(int levels, int dim);  // sum_{i<levels} |i><i|
Matrix partial_transpose_second(const Matrix& x, int dim_a, int dim_b);

// Sum of singular values. For Hermitian X this equals the sum of |eigenvalue|.
double trace_norm(const Matrix& x);

double trace_distance(const Matrix& a, const Matrix& b);

Matrix partial_trace(const Matrix& x, int dim_a, int dim_b, Keep keep);

// Partial trace over an arbitrary subset of tensor factors; `keep` lists the
// factor indices to retain, in their original order.
Matrix partial_trace_keep(const Matrix& x, const std::vector<int>& dims,
                          const std::vector<int>& keep);

// --- special states and functionals ----------------------------------------

// Diagonal state with entries (1 - e^{-omega}) e^{-omega n}. ExactTail keeps
// the analytic coefficients (trace 1 - e^{-omega dim}); Renormalized divides
// by that trace.
FockState gibbs_state(double omega, int dim, GibbsMode mode);

FockState two_mode_squeezed(double omega, int dim);

// -sum lambda log lambda over the eigenvalues, with 0 log 0 := 0. Eigenvalues
// in (-1e-10, 0) are clipped to zero; anything more negative is rejected.
double von_neumann_entropy(const FockState& rho, EntropyBase base);

// S(A) + S(B) - S(AB) in bits.
double mutual_information(const FockState& rho_ab, int dim_a, int dim_b);

double mean_photon_number(const Matrix& rho);

} // namespace qdarwin::fock

#endif
