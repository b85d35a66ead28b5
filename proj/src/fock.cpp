#include "qdarwin/fock.hpp"

#include <cmath>

namespace qdarwin::fock {

namespace {

void require_finite(const Matrix& x, const char* what) {
  if (!x.allFinite()) throw InvalidOperator(std::string(what) + ": non-finite entries");
}

void require_square(const Matrix& x, const char* what) {
  if (x.rows() != x.cols() || x.rows() < 1)
    throw ShapeError(std::string(what) + ": expected a square matrix of dim >= 1");
}

void require_hermitian(const Matrix& x, const char* what) {
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if ((x - x.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
    throw NotAState(std::string(what) + ": not Hermitian within tolerance");
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

} // namespace

FockState::FockState(Matrix rho) : rho_(std::move(rho)) {
  require_finite(rho_, "FockState");
  require_square(rho_, "FockState");
  require_hermitian(rho_, "FockState");
  if (trace() > 1.0 + kTraceTol)
    throw NotAState("FockState: trace exceeds 1");
  const Eigen::VectorXd evals = hermitian_eigenvalues(rho_);
  if (evals.minCoeff() < -kEigenvalueTol)
    throw NotAState("FockState: negative eigenvalue beyond tolerance");
}

FockState FockState::renormalized() const {
  const double tr = trace();
  if (tr <= 0.0) throw NotAState("FockState: cannot renormalize zero-trace state");
  return trusted_state(rho_ / tr);
}

FockState trusted_state(Matrix rho) {
  require_finite(rho, "FockState");
  require_square(rho, "FockState");
  require_hermitian(rho, "FockState");
  return FockState(std::move(rho), FockState::Trusted{});
}

TwoModeSqueezed::TwoModeSqueezed(double omega_in, int dim_in)
    : omega(omega_in), dim(dim_in) {
  if (!(omega > 0.0)) throw InvalidParameter("TwoModeSqueezed: omega must be positive");
  if (dim < 1) throw InvalidParameter("TwoModeSqueezed: dim must be >= 1");
}

double TwoModeSqueezed::normalization() const {
  return std::sqrt(-std::expm1(-omega));
}

double TwoModeSqueezed::coefficient(int j) const {
  if (j < 0 || j >= dim) throw IndexError("TwoModeSqueezed: level out of range");
  return normalization() * std::exp(-0.5 * omega * j);
}

double TwoModeSqueezed::norm2() const {
  return -std::expm1(-omega * dim);
}

double TwoModeSqueezed::mean_photons() const {
  return 1.0 / std::expm1(omega);
}

Vector TwoModeSqueezed::ket() const {
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dim) * dim);
  for (int j = 0; j < dim; ++j) psi(j * dim + j) = coefficient(j);
  return psi;
}

FockState TwoModeSqueezed::projector() const {
  const Vector psi = ket();
  return trusted_state(psi * psi.adjoint());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix number_operator(int dim) {
  if (dim < 1) throw InvalidParameter("number_operator: dim must be >= 1");
  Matrix n = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) n(i, i) = static_cast<double>(i);
  return n;
}

Matrix level_projector(int levels, int dim) {
  if (levels < 0 || levels > dim)
    throw InvalidParameter("level_projector: levels must lie in [0, dim]");
  Matrix p = Matrix::Zero(dim, dim);
  for (int i = 0; i < levels; ++i) p(i, i) = 1.0;
  return p;
}

Matrix partial_transpose_second(const Matrix& x, int dim_a, int dim_b) {
  if (x.rows() != static_cast<Eigen::Index>(dim_a) * dim_b || x.rows() != x.cols())
    throw ShapeError("partial_transpose_second: dimension mismatch");
  Matrix out(x.rows(), x.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int ap = 0; ap < dim_a; ++ap)
      out.block(a * dim_b, ap * dim_b, dim_b, dim_b) =
          x.block(a * dim_b, ap * dim_b, dim_b, dim_b).transpose();
  return out;
}

double trace_norm(const Matrix& x) {
  require_finite(x, "trace_norm");
  if (x.rows() != x.cols())
    throw ShapeError("trace_norm: expected a square matrix");
  if (x.rows() <= 16) {
    Eigen::JacobiSVD<Matrix> svd(x);
    return svd.singularValues().sum();
  }
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  return 0.5 * trace_norm(a - b);
}

Matrix partial_trace(const Matrix& x, int dim_a, int dim_b, Keep keep) {
  if (x.rows() != x.cols() || x.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw ShapeError("partial_trace: dimension mismatch");
  if (keep == Keep::SubsystemA) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int a = 0; a < dim_a; ++a)
      for (int ap = 0; ap < dim_a; ++ap)
        for (int b = 0; b < dim_b; ++b)
          out(a, ap) += x(a * dim_b + b, ap * dim_b + b);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int b = 0; b < dim_b; ++b)
    for (int bp = 0; bp < dim_b; ++bp)
      for (int a = 0; a < dim_a; ++a)
        out(b, bp) += x(a * dim_b + b, a * dim_b + bp);
  return out;
}

Matrix partial_trace_keep(const Matrix& x, const std::vector<int>& dims,
                          const std::vector<int>& keep) {
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw InvalidParameter("partial_trace_keep: dims must be positive");
    total *= d;
  }
  if (x.rows() != x.cols() || x.rows() != total)
    throw ShapeError("partial_trace_keep: dimension mismatch");

  std::vector<char> is_kept(dims.size(), 0);
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw IndexError("partial_trace_keep: factor index out of range");
    if (is_kept[k]) throw IndexError("partial_trace_keep: repeated factor index");
    is_kept[k] = 1;
  }

  std::vector<int> traced;
  long long keep_dim = 1, traced_dim = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (is_kept[i]) keep_dim *= dims[i];
    else { traced.push_back(static_cast<int>(i)); traced_dim *= dims[i]; }
  }

  // strides of each factor in the full row-major composite index
  std::vector<long long> stride(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    stride[i] = stride[i + 1] * dims[i + 1];

  // enumerate kept / traced multi-indices and accumulate
  const auto expand = [&](const std::vector<int>& factors, long long flat) {
    long long idx = 0;
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
      const int f = factors[i];
      idx += (flat % dims[f]) * stride[f];
      flat /= dims[f];
    }
    return idx;
  };

  std::vector<int> kept_factors;
  for (int k : keep) kept_factors.push_back(k);

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (long long r = 0; r < keep_dim; ++r) {
    const long long row_base = expand(kept_factors, r);
    for (long long c = 0; c < keep_dim; ++c) {
      const long long col_base = expand(kept_factors, c);
      Complex acc = 0.0;
      for (long long t = 0; t < traced_dim; ++t) {
        const long long off = expand(traced, t);
        acc += x(row_base + off, col_base + off);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

FockState gibbs_state(double omega, int dim, GibbsMode mode) {
  if (!(omega > 0.0)) throw InvalidParameter("gibbs_state: omega must be positive");
  if (dim < 1) throw InvalidParameter("gibbs_state: dim must be >= 1");
  Matrix rho = Matrix::Zero(dim, dim);
  const double norm = -std::expm1(-omega);  // 1 - e^{-omega}
  for (int n = 0; n < dim; ++n) rho(n, n) = norm * std::exp(-omega * n);
  if (mode == GibbsMode::Renormalized)
    rho /= -std::expm1(-omega * dim);
  return trusted_state(std::move(rho));
}

FockState two_mode_squeezed(double omega, int dim) {
  return TwoModeSqueezed(omega, dim).projector();
}

double von_neumann_entropy(const FockState& rho, EntropyBase base) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  double entropy_nats = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    double lambda = solver.eigenvalues()(i);
    if (lambda < -kEigenvalueTol)
      throw NotAState("von_neumann_entropy: negative eigenvalue beyond tolerance");
    if (lambda <= 0.0) continue;  // clip round-off negatives, 0 log 0 := 0
    entropy_nats -= lambda * std::log(lambda);
  }
  if (base == EntropyBase::Bits) return entropy_nats / std::log(2.0);
  return entropy_nats;
}

double mutual_information(const FockState& rho_ab, int dim_a, int dim_b) {
  const Matrix& x = rho_ab.matrix();
  if (x.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw ShapeError("mutual_information: dimension mismatch");
  const FockState rho_a = trusted_state(partial_trace(x, dim_a, dim_b, Keep::SubsystemA));
  const FockState rho_b = trusted_state(partial_trace(x, dim_a, dim_b, Keep::SubsystemB));
  return von_neumann_entropy(rho_a, EntropyBase::Bits) +
         von_neumann_entropy(rho_b, EntropyBase::Bits) -
         von_neumann_entropy(rho_ab, EntropyBase::Bits);
}

double mean_photon_number(const Matrix& rho) {
  if (rho.rows() != rho.cols())
    throw ShapeError("mean_photon_number: expected a square matrix");
  double value = 0.0;
  for (Eigen::Index n = 0; n < rho.rows(); ++n)
    value += static_cast<double>(n) * rho(n, n).real();
  return value;
}

} // namespace qdarwin::fock
