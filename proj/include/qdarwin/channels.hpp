#ifndef QDARWIN_CHANNELS_HPP
#define QDARWIN_CHANNELS_HPP

#include <cstdint>
#include <vector>

#include "qdarwin/fock.hpp"

namespace qdarwin::channels {

using fock::Complex;
using fock::FockState;
using fock::Matrix;
using fock::Vector;

// Completely positive trace-preserving map held as a Kraus list. Kraus form
// keeps trace preservation directly testable; Choi matrices are derived on
// demand.
class QuantumChannel {
public:
  explicit QuantumChannel(std::vector<Matrix> kraus);

  static QuantumChannel identity(int dim);
  static QuantumChannel dephasing(int dim);
  static QuantumChannel depolarizing(int din, int dout);
  static QuantumChannel from_isometry(const Matrix& v);

  int input_dim() const { return din_; }
  int output_dim() const { return dout_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& x) const;
  FockState apply(const FockState& rho) const;

  // sum_{k k'} |k><k'| (x) L(|k><k'|) on input (x) output; trace = input_dim.
  Matrix choi_matrix() const;

private:
  int din_;
  int dout_;
  std::vector<Matrix> kraus_;
};

// L (x) id and id (x) L acting on bipartite operators.
Matrix apply_first(const QuantumChannel& ch, const Matrix& x, int dim_second);
Matrix apply_second(const QuantumChannel& ch, const Matrix& x, int dim_first);

// Channel recovered from a positive Choi matrix by eigendecomposition.
QuantumChannel channel_from_choi(const Matrix& choi, int din, int dout,
                                 double cutoff = 1e-12);

// Channel applied to half of the d-dimensional maximally entangled state;
// trace 1, marginal on the untouched side I/d for trace-preserving maps.
struct TruncatedChoi {
  int d = 0;
  int out_dim = 0;
  FockState state;  // on d (x) out_dim
};

TruncatedChoi truncated_choi(const QuantumChannel& ch, int d);

// Channel applied to half of the two-mode squeezed ket with rate omega,
// truncated at the channel input dimension. The kept analytic coefficients
// give trace 1 - e^{-omega dim}; the marginal on the untouched side is the
// exact-tail Gibbs state.
struct ModifiedChoi {
  double omega = 0.0;
  int dim = 0;
  int out_dim = 0;
  FockState state;  // on dim (x) out_dim
};

ModifiedChoi modified_choi(const QuantumChannel& ch, double omega);

// Effective dynamics to one environment fragment: trace out every other
// output factor. fragment_index is zero-based.
QuantumChannel fragment_channel(const QuantumChannel& ch,
                                const std::vector<int>& fragment_dims,
                                int fragment_index);

// Trace-preserving channel with Gaussian random Kraus operators,
// orthonormalized as a stacked isometry. Deterministic per seed.
QuantumChannel random_channel(int din, int dout, int kraus_count,
                              std::uint64_t seed);

// Measure-and-prepare channel X -> sum_z Tr(M_z X) rho_z. The effects absorb
// the outcome weights; prepared states are normalized.
class MeasurePrepare {
public:
  MeasurePrepare(std::vector<Matrix> effects, std::vector<Matrix> prepared,
                 std::vector<double> weights);

  int input_dim() const { return din_; }
  int output_dim() const { return dout_; }
  const std::vector<Matrix>& effects() const { return effects_; }
  const std::vector<Matrix>& prepared() const { return prepared_; }
  const std::vector<double>& weights() const { return weights_; }

  Matrix apply(const Matrix& x) const;
  QuantumChannel to_channel() const;

private:
  int din_;
  int dout_;
  std::vector<Matrix> effects_;
  std::vector<Matrix> prepared_;
  std::vector<double> weights_;
};

// The explicit measure-and-prepare construction attached to a channel's
// modified Choi state: condition on projective (or general) POVM outcomes z
// measured on a subset of output fragments, then
//   M_z = (1 - e^{-omega})^{-1} p(z) O (rho_A^z)^T O,  O = diag(e^{omega i/2}),
// with prepared states given by the conditioned fragment marginals. With an
// empty measured set this reduces to the single-outcome identity POVM.
// O is built only on the truncated space; its unboundedness in infinite
// dimensions is irrelevant at fixed dim.
MeasurePrepare build_measure_prepare(
    const QuantumChannel& ch, double omega,
    const std::vector<int>& fragment_dims, int keep_fragment,
    const std::vector<int>& measured_fragments,
    const std::vector<std::vector<Matrix>>& conditioning_povms);

} // namespace qdarwin::channels

#endif
