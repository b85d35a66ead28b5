#include "qdarwin/channels.hpp"

#include <cmath>

#include "qdarwin/rng.hpp"

namespace qdarwin::channels {

namespace {

constexpr double kCompletenessTol = 1e-10;

void check_completeness(const std::vector<Matrix>& kraus, int din, const char* what) {
  Matrix sum = Matrix::Zero(din, din);
  for (const Matrix& k : kraus) sum += k.adjoint() * k;
  const double dev = (sum - Matrix::Identity(din, din)).cwiseAbs().maxCoeff();
  if (dev > kCompletenessTol)
    throw InvalidOperator(std::string(what) + ": Kraus operators are not trace preserving");
}

} // namespace

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty())
    throw InvalidOperator("QuantumChannel: empty Kraus list");
  dout_ = static_cast<int>(kraus_.front().rows());
  din_ = static_cast<int>(kraus_.front().cols());
  for (const Matrix& k : kraus_) {
    if (!k.allFinite()) throw InvalidOperator("QuantumChannel: non-finite Kraus entry");
    if (k.rows() != dout_ || k.cols() != din_)
      throw ShapeError("QuantumChannel: inconsistent Kraus shapes");
  }
  check_completeness(kraus_, din_, "QuantumChannel");
}

QuantumChannel QuantumChannel::identity(int dim) {
  return QuantumChannel({Matrix::Identity(dim, dim)});
}

QuantumChannel QuantumChannel::dephasing(int dim) {
  std::vector<Matrix> kraus;
  for (int i = 0; i < dim; ++i) {
    Matrix k = Matrix::Zero(dim, dim);
    k(i, i) = 1.0;
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::depolarizing(int din, int dout) {
  // X -> Tr(X) I / dout
  std::vector<Matrix> kraus;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dout));
  for (int i = 0; i < dout; ++i)
    for (int j = 0; j < din; ++j) {
      Matrix k = Matrix::Zero(dout, din);
      k(i, j) = scale;
      kraus.push_back(std::move(k));
    }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel QuantumChannel::from_isometry(const Matrix& v) {
  return QuantumChannel({v});
}

Matrix QuantumChannel::apply(const Matrix& x) const {
  if (x.rows() != din_ || x.cols() != din_)
    throw ShapeError("QuantumChannel::apply: dimension mismatch");
  Matrix out = Matrix::Zero(dout_, dout_);
  for (const Matrix& k : kraus_) out += k * x * k.adjoint();
  return out;
}

FockState QuantumChannel::apply(const FockState& rho) const {
  return fock::trusted_state(apply(rho.matrix()));
}

Matrix QuantumChannel::choi_matrix() const {
  Matrix choi = Matrix::Zero(static_cast<Eigen::Index>(din_) * dout_,
                             static_cast<Eigen::Index>(din_) * dout_);
  for (const Matrix& k : kraus_) {
    // |v> = sum_a |a> (x) K|a>, i.e. v[(a,b)] = K(b,a)
    Vector v(static_cast<Eigen::Index>(din_) * dout_);
    for (int a = 0; a < din_; ++a)
      for (int b = 0; b < dout_; ++b) v(a * dout_ + b) = k(b, a);
    choi += v * v.adjoint();
  }
  return choi;
}

Matrix apply_first(const QuantumChannel& ch, const Matrix& x, int dim_second) {
  const int din = ch.input_dim(), dout = ch.output_dim();
  if (x.rows() != static_cast<Eigen::Index>(din) * dim_second || x.rows() != x.cols())
    throw ShapeError("apply_first: dimension mismatch");
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dout) * dim_second,
                            static_cast<Eigen::Index>(dout) * dim_second);
  // x[(a i), (a' j)]; the channel contracts the first index pair.
  for (const Matrix& k : ch.kraus())
    for (int b = 0; b < dout; ++b)
      for (int bp = 0; bp < dout; ++bp) {
        Matrix block = Matrix::Zero(dim_second, dim_second);
        for (int a = 0; a < din; ++a)
          for (int ap = 0; ap < din; ++ap) {
            const Complex w = k(b, a) * std::conj(k(bp, ap));
            if (w == Complex(0.0, 0.0)) continue;
            block += w * x.block(a * dim_second, ap * dim_second,
                                 dim_second, dim_second);
          }
        out.block(b * dim_second, bp * dim_second, dim_second, dim_second) += block;
      }
  return out;
}

Matrix apply_second(const QuantumChannel& ch, const Matrix& x, int dim_first) {
  const int din = ch.input_dim(), dout = ch.output_dim();
  if (x.rows() != static_cast<Eigen::Index>(dim_first) * din || x.rows() != x.cols())
    throw ShapeError("apply_second: dimension mismatch");
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim_first) * dout,
                            static_cast<Eigen::Index>(dim_first) * dout);
  for (int a = 0; a < dim_first; ++a)
    for (int ap = 0; ap < dim_first; ++ap)
      out.block(a * dout, ap * dout, dout, dout) =
          ch.apply(x.block(a * din, ap * din, din, din));
  return out;
}

QuantumChannel channel_from_choi(const Matrix& choi, int din, int dout, double cutoff) {
  if (choi.rows() != static_cast<Eigen::Index>(din) * dout || choi.rows() != choi.cols())
    throw ShapeError("channel_from_choi: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(choi);
  const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Matrix> kraus;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda <= cutoff * scale) continue;
    const Vector v = solver.eigenvectors().col(i);
    Matrix k(dout, din);
    for (int a = 0; a < din; ++a)
      for (int b = 0; b < dout; ++b) k(b, a) = std::sqrt(lambda) * v(a * dout + b);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) throw InvalidOperator("channel_from_choi: zero Choi matrix");
  return QuantumChannel(std::move(kraus));
}

TruncatedChoi truncated_choi(const QuantumChannel& ch, int d) {
  if (d < 1) throw InvalidParameter("truncated_choi: d must be >= 1");
  if (d > ch.input_dim())
    throw ShapeError("truncated_choi: d exceeds the channel input dimension");
  const int dout = ch.output_dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  // the maximally entangled input is pure: accumulate (I (x) K)|Phi> directly
  Matrix state = Matrix::Zero(static_cast<Eigen::Index>(d) * dout,
                              static_cast<Eigen::Index>(d) * dout);
  for (const Matrix& k : ch.kraus()) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * dout);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < dout; ++b) v(a * dout + b) = scale * k(b, a);
    state += v * v.adjoint();
  }
  return TruncatedChoi{d, dout, fock::trusted_state(std::move(state))};
}

ModifiedChoi modified_choi(const QuantumChannel& ch, double omega) {
  const int dim = ch.input_dim();
  const int dout = ch.output_dim();
  const fock::TwoModeSqueezed tms(omega, dim);
  Matrix state = Matrix::Zero(static_cast<Eigen::Index>(dim) * dout,
                              static_cast<Eigen::Index>(dim) * dout);
  for (const Matrix& k : ch.kraus()) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim) * dout);
    for (int j = 0; j < dim; ++j) {
      const double c = tms.coefficient(j);
      for (int b = 0; b < dout; ++b) v(j * dout + b) = c * k(b, j);
    }
    state += v * v.adjoint();
  }
  return ModifiedChoi{omega, dim, dout, fock::trusted_state(std::move(state))};
}

QuantumChannel fragment_channel(const QuantumChannel& ch,
                                const std::vector<int>& fragment_dims,
                                int fragment_index) {
  long long prod = 1;
  for (int d : fragment_dims) prod *= d;
  if (prod != ch.output_dim())
    throw ShapeError("fragment_channel: fragment dims do not factor the output");
  if (fragment_index < 0 || fragment_index >= static_cast<int>(fragment_dims.size()))
    throw IndexError("fragment_channel: fragment index out of range");

  std::vector<int> dims;
  dims.push_back(ch.input_dim());
  for (int d : fragment_dims) dims.push_back(d);
  const Matrix choi_j = fock::partial_trace_keep(
      ch.choi_matrix(), dims, {0, 1 + fragment_index});
  return channel_from_choi(choi_j, ch.input_dim(), fragment_dims[fragment_index]);
}

QuantumChannel random_channel(int din, int dout, int kraus_count, std::uint64_t seed) {
  if (din < 1 || dout < 1 || kraus_count < 1)
    throw InvalidParameter("random_channel: dimensions and count must be positive");
  if (static_cast<long long>(kraus_count) * dout < din)
    throw InvalidParameter("random_channel: kraus_count * dout must be >= din");
  RngStream rng(seed);
  Matrix stacked(static_cast<Eigen::Index>(kraus_count) * dout, din);
  for (Eigen::Index i = 0; i < stacked.rows(); ++i)
    for (Eigen::Index j = 0; j < stacked.cols(); ++j)
      stacked(i, j) = rng.complex_normal();

  // polar correction: V <- V (V^dag V)^{-1/2} makes the stack an isometry
  Eigen::SelfAdjointEigenSolver<Matrix> solver(stacked.adjoint() * stacked);
  Matrix inv_sqrt = Matrix::Zero(din, din);
  for (int i = 0; i < din; ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda <= 1e-14)
      throw InvalidOperator("random_channel: degenerate random stack");
    inv_sqrt += solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint() /
                std::sqrt(lambda);
  }
  stacked = stacked * inv_sqrt;

  std::vector<Matrix> kraus;
  for (int i = 0; i < kraus_count; ++i)
    kraus.push_back(stacked.block(static_cast<Eigen::Index>(i) * dout, 0, dout, din));
  return QuantumChannel(std::move(kraus));
}

MeasurePrepare::MeasurePrepare(std::vector<Matrix> effects, std::vector<Matrix> prepared,
                               std::vector<double> weights)
    : effects_(std::move(effects)), prepared_(std::move(prepared)),
      weights_(std::move(weights)) {
  if (effects_.empty() || effects_.size() != prepared_.size() ||
      effects_.size() != weights_.size())
    throw InvalidPOVM("MeasurePrepare: effects, states and weights must align");
  din_ = static_cast<int>(effects_.front().rows());
  dout_ = static_cast<int>(prepared_.front().rows());

  Matrix sum = Matrix::Zero(din_, din_);
  double weight_sum = 0.0;
  for (std::size_t z = 0; z < effects_.size(); ++z) {
    const Matrix& m = effects_[z];
    if (m.rows() != din_ || m.cols() != din_)
      throw ShapeError("MeasurePrepare: inconsistent effect shapes");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kCompletenessTol)
      throw InvalidPOVM("MeasurePrepare: effect has a negative eigenvalue");
    sum += m;
    if (weights_[z] < 0.0)
      throw InvalidParameter("MeasurePrepare: negative outcome weight");
    weight_sum += weights_[z];
    fock::FockState check(prepared_[z]);  // validates the prepared state
    if (std::abs(check.trace() - 1.0) > 1e-9)
      throw NotAState("MeasurePrepare: prepared states must be normalized");
  }
  if ((sum - Matrix::Identity(din_, din_)).cwiseAbs().maxCoeff() > kCompletenessTol)
    throw InvalidPOVM("MeasurePrepare: effects do not sum to the identity");
  if (weight_sum > 1.0 + kCompletenessTol)
    throw InvalidParameter("MeasurePrepare: outcome weights exceed 1");
}

Matrix MeasurePrepare::apply(const Matrix& x) const {
  if (x.rows() != din_ || x.cols() != din_)
    throw ShapeError("MeasurePrepare::apply: dimension mismatch");
  Matrix out = Matrix::Zero(dout_, dout_);
  for (std::size_t z = 0; z < effects_.size(); ++z)
    out += (effects_[z] * x).trace() * prepared_[z];
  return out;
}

QuantumChannel MeasurePrepare::to_channel() const {
  std::vector<Matrix> kraus;
  for (std::size_t z = 0; z < effects_.size(); ++z) {
    Eigen::SelfAdjointEigenSolver<Matrix> meas(effects_[z]);
    Eigen::SelfAdjointEigenSolver<Matrix> prep(prepared_[z]);
    for (Eigen::Index a = 0; a < meas.eigenvalues().size(); ++a) {
      const double lambda = std::max(0.0, meas.eigenvalues()(a));
      if (lambda <= 1e-14) continue;
      for (Eigen::Index b = 0; b < prep.eigenvalues().size(); ++b) {
        const double mu = std::max(0.0, prep.eigenvalues()(b));
        if (mu <= 1e-14) continue;
        kraus.push_back(std::sqrt(lambda * mu) * prep.eigenvectors().col(b) *
                        meas.eigenvectors().col(a).adjoint());
      }
    }
  }
  return QuantumChannel(std::move(kraus));
}

MeasurePrepare build_measure_prepare(
    const QuantumChannel& ch, double omega,
    const std::vector<int>& fragment_dims, int keep_fragment,
    const std::vector<int>& measured_fragments,
    const std::vector<std::vector<Matrix>>& conditioning_povms) {
  long long prod = 1;
  for (int d : fragment_dims) prod *= d;
  if (prod != ch.output_dim())
    throw ShapeError("build_measure_prepare: fragment dims do not factor the output");
  if (keep_fragment < 0 || keep_fragment >= static_cast<int>(fragment_dims.size()))
    throw IndexError("build_measure_prepare: kept fragment index out of range");
  if (measured_fragments.size() != conditioning_povms.size())
    throw InvalidPOVM("build_measure_prepare: one POVM per measured fragment");

  for (std::size_t i = 0; i < measured_fragments.size(); ++i) {
    const int f = measured_fragments[i];
    if (f < 0 || f >= static_cast<int>(fragment_dims.size()) || f == keep_fragment)
      throw IndexError("build_measure_prepare: invalid measured fragment index");
    Matrix sum = Matrix::Zero(fragment_dims[f], fragment_dims[f]);
    for (const Matrix& e : conditioning_povms[i]) {
      if (e.rows() != fragment_dims[f] || e.cols() != fragment_dims[f])
        throw ShapeError("build_measure_prepare: POVM element shape mismatch");
      sum += e;
    }
    if ((sum - Matrix::Identity(fragment_dims[f], fragment_dims[f]))
            .cwiseAbs().maxCoeff() > kCompletenessTol)
      throw InvalidPOVM("build_measure_prepare: conditioning POVM is not complete");
  }

  const int dim = ch.input_dim();
  const ModifiedChoi joint = modified_choi(ch, omega);

  // dims of the joint state: [A, B_0, ..., B_{n-1}]
  std::vector<int> dims;
  dims.push_back(dim);
  for (int d : fragment_dims) dims.push_back(d);

  // O = diag(e^{omega i / 2}) and the squared normalization 1 - e^{-omega}
  Matrix filter = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) filter(i, i) = std::exp(0.5 * omega * i);
  const double norm2 = -std::expm1(-omega);

  // enumerate outcome tuples over the measured fragments
  std::vector<std::size_t> outcome_counts;
  std::size_t total_outcomes = 1;
  for (const auto& povm : conditioning_povms) {
    outcome_counts.push_back(povm.size());
    total_outcomes *= povm.size();
  }

  std::vector<Matrix> effects, prepared;
  std::vector<double> weights;
  for (std::size_t flat = 0; flat < total_outcomes; ++flat) {
    // E_z on the full output: conditioning effects at measured slots, I elsewhere
    std::vector<Matrix> slot_ops(fragment_dims.size());
    for (std::size_t f = 0; f < fragment_dims.size(); ++f)
      slot_ops[f] = Matrix::Identity(fragment_dims[f], fragment_dims[f]);
    std::size_t rest = flat;
    for (std::size_t i = 0; i < measured_fragments.size(); ++i) {
      const std::size_t which = rest % outcome_counts[i];
      rest /= outcome_counts[i];
      slot_ops[static_cast<std::size_t>(measured_fragments[i])] =
          conditioning_povms[i][which];
    }
    Matrix e_z = Matrix::Identity(dim, dim);
    for (const Matrix& op : slot_ops) e_z = fock::kron(e_z, op);

    // conditioned (unnormalized) joint state on A (x) B_j; the POVM element
    // may replace its square root under the partial trace over measured slots
    const Matrix sigma = fock::partial_trace_keep(
        e_z * joint.state.matrix(), dims, {0, 1 + keep_fragment});
    const double p = sigma.trace().real();
    if (p <= 1e-14) continue;  // zero-probability outcome contributes nothing

    const Matrix rho_a =
        fock::partial_trace(sigma, dim, fragment_dims[keep_fragment],
                            fock::Keep::SubsystemA) / p;
    const Matrix rho_b =
        fock::partial_trace(sigma, dim, fragment_dims[keep_fragment],
                            fock::Keep::SubsystemB) / p;

    effects.push_back(filter * rho_a.transpose() * filter * (p / norm2));
    // enforce exact hermiticity against round-off before validation
    effects.back() = 0.5 * (effects.back() + effects.back().adjoint().eval());
    prepared.push_back(0.5 * (rho_b + rho_b.adjoint().eval()));
    weights.push_back(p);
  }

  return MeasurePrepare(std::move(effects), std::move(prepared), std::move(weights));
}

} // namespace qdarwin::channels
