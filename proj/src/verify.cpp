#include "qdarwin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>

#include <nlohmann/json.hpp>

#include "qdarwin/bounds.hpp"
#include "qdarwin/rng.hpp"

namespace qdarwin::verify {

namespace {

using channels::MeasurePrepare;
using channels::QuantumChannel;
using fock::Complex;
using fock::Matrix;
using fock::Vector;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_params(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

Matrix random_matrix(RngStream& rng, int rows, int cols) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

Matrix random_density(RngStream& rng, int dim) {
  const Matrix g = random_matrix(rng, dim, dim);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

Vector random_pure(RngStream& rng, int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  v /= v.norm();
  return v;
}

// Hermitian with spectrum rescaled into [0, 1].
Matrix random_effect(RngStream& rng, int dim) {
  const Matrix g = random_matrix(rng, dim, dim);
  Matrix h = 0.5 * (g + g.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (hi - lo < 1e-12) return 0.5 * Matrix::Identity(dim, dim);
  return (h - lo * Matrix::Identity(dim, dim)) / (hi - lo);
}

std::vector<Matrix> random_povm(RngStream& rng, int dim, int outcomes) {
  std::vector<Matrix> gram;
  Matrix total = Matrix::Zero(dim, dim);
  for (int z = 0; z < outcomes; ++z) {
    const Matrix g = random_matrix(rng, dim, dim);
    gram.push_back(g * g.adjoint());
    total += gram.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(total);
  Matrix inv_sqrt = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    inv_sqrt += solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint() /
                std::sqrt(solver.eigenvalues()(i));
  std::vector<Matrix> povm;
  for (const Matrix& g : gram) {
    Matrix m = inv_sqrt * g * inv_sqrt;
    povm.push_back(0.5 * (m + m.adjoint().eval()));
  }
  return povm;
}

Matrix matrix_sqrt(const Matrix& psd) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(psd);
  Matrix root = Matrix::Zero(psd.rows(), psd.cols());
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = std::max(0.0, solver.eigenvalues()(i));
    root += std::sqrt(lambda) * solver.eigenvectors().col(i) *
            solver.eigenvectors().col(i).adjoint();
  }
  return root;
}

// --- constrained lower-bound estimator --------------------------------------

struct Constraint {
  enum class Kind { MeanEnergy, ExpMoment } kind;
  double cap = 0.0;    // nbar or Omega
  double omega = 0.0;  // ExpMoment only

  double weight(int level) const {
    return kind == Kind::MeanEnergy ? static_cast<double>(level)
                                    : std::exp(omega * level);
  }
  double anchor() const { return kind == Kind::MeanEnergy ? 0.0 : 1.0; }
  std::string describe() const {
    return kind == Kind::MeanEnergy
               ? format_params("mean-energy nbar=%.6g", cap)
               : format_params("exp-cutoff omega=%.6g Omega=%.6g", omega, cap);
  }
};

// Action of (L0 - L1) (x) id on states supported on the first `levels` input
// levels, precomputed blockwise so candidate evaluation is a small assembly.
class DiffAction {
public:
  DiffAction(const QuantumChannel& ch0, const QuantumChannel& ch1, int levels)
      : levels_(levels), dout_(ch0.output_dim()) {
    if (ch0.input_dim() != ch1.input_dim() || ch0.output_dim() != ch1.output_dim())
      throw ShapeError("lower_bound: channels must share input and output spaces");
    if (levels_ < 1 || levels_ > ch0.input_dim())
      throw InvalidParameter("lower_bound: invalid search level count");
    const int din = ch0.input_dim();
    blocks_.resize(static_cast<std::size_t>(levels_) * levels_);
    Matrix unit = Matrix::Zero(din, din);
    for (int a = 0; a < levels_; ++a)
      for (int ap = 0; ap < levels_; ++ap) {
        unit.setZero();
        unit(a, ap) = 1.0;
        blocks_[a * levels_ + ap] = ch0.apply(unit) - ch1.apply(unit);
      }
  }

  int levels() const { return levels_; }
  int output_dim() const { return dout_; }

  // X = sum_{a a'} D[a,a'] (x) R[a,a'] for ancilla blocks R of size levels^2.
  Matrix output(const Matrix& rho) const {
    Matrix x = Matrix::Zero(static_cast<Eigen::Index>(dout_) * levels_,
                            static_cast<Eigen::Index>(dout_) * levels_);
    for (int a = 0; a < levels_; ++a)
      for (int ap = 0; ap < levels_; ++ap) {
        const Matrix& d = blocks_[a * levels_ + ap];
        const auto r = rho.block(a * levels_, ap * levels_, levels_, levels_);
        for (int b = 0; b < dout_; ++b)
          for (int bp = 0; bp < dout_; ++bp) {
            const Complex w = d(b, bp);
            if (w == Complex(0.0, 0.0)) continue;
            x.block(b * levels_, bp * levels_, levels_, levels_) += w * r;
          }
      }
    return x;
  }

private:
  int levels_;
  int dout_;
  std::vector<Matrix> blocks_;
};

struct CandidateValue {
  double value = 0.0;
  double t = 1.0;  // weight kept on the sampled state after projection
};

// Value of the best feasible mixture t rho_psi + (1-t) anchor, where the
// anchor is |0><0| (x) rho_2. The norm is convex in t, so the maximum over
// the feasible segment sits at an endpoint.
CandidateValue evaluate_candidate(const DiffAction& diff, const Constraint& con,
                                  const Vector& psi) {
  const int s = diff.levels();
  const Matrix rho = psi * psi.adjoint();

  double constraint_value = 0.0;
  Matrix rho2 = Matrix::Zero(s, s);
  for (int a = 0; a < s; ++a) {
    const auto block = rho.block(a * s, a * s, s, s);
    constraint_value += con.weight(a) * block.trace().real();
    rho2 += block;
  }

  Matrix anchor = Matrix::Zero(rho.rows(), rho.cols());
  anchor.block(0, 0, s, s) = rho2;

  const Matrix x_psi = diff.output(rho);
  const Matrix x_anchor = diff.output(anchor);

  double t = 1.0;
  if (constraint_value > con.cap) {
    t = (con.cap - con.anchor()) / (constraint_value - con.anchor());
    t = std::clamp(t, 0.0, 1.0);
  }
  const double at_t = fock::trace_norm(t * x_psi + (1.0 - t) * x_anchor);
  const double at_zero = fock::trace_norm(x_anchor);
  if (at_zero > at_t) return {at_zero, 0.0};
  return {at_t, t};
}

NormEstimate lower_bound_impl(const QuantumChannel& ch0, const QuantumChannel& ch1,
                              const Constraint& con, const SearchBudget& budget,
                              std::uint64_t seed, int search_levels) {
  if (budget.seeds < 1 || budget.refine_iterations < 0)
    throw InvalidBudget("lower_bound: need at least one seed");
  const int s = (search_levels > 0) ? search_levels
                                    : std::min(ch0.input_dim(), 8);
  const DiffAction diff(ch0, ch1, s);
  const int n = s * s;

  // structured seeds first, then random ones; fixed order keeps the estimate
  // nondecreasing in the seed budget
  std::vector<std::pair<Vector, std::string>> seeds;
  {
    Vector vac = Vector::Zero(n);
    vac(0) = 1.0;
    seeds.emplace_back(vac, "vacuum");

    Vector ent = Vector::Zero(n);
    for (int k = 0; k < s; ++k) ent(k * s + k) = 1.0 / std::sqrt(double(s));
    seeds.emplace_back(ent, "max-entangled");

    for (int k = 1; k < s; ++k) {
      Vector basis = Vector::Zero(n);
      basis(k * s + k) = 1.0;
      seeds.emplace_back(basis, format_params("level-%d", k));
    }
    for (double rate : {0.3, 1.0, 3.0}) {
      Vector tms = Vector::Zero(n);
      for (int k = 0; k < s; ++k) tms(k * s + k) = std::exp(-0.5 * rate * k);
      tms /= tms.norm();
      seeds.emplace_back(tms, format_params("squeezed-%.1f", rate));
    }
  }
  while (static_cast<int>(seeds.size()) < budget.seeds) {
    RngStream rng = RngStream::for_trial(seed, seeds.size());
    seeds.emplace_back(random_pure(rng, n), "random");
  }
  if (static_cast<int>(seeds.size()) > budget.seeds) seeds.resize(budget.seeds);

  double best_value = 0.0;
  double best_t = 1.0;
  std::size_t best_index = 0;
  Vector best_psi = seeds.front().first;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const CandidateValue cv = evaluate_candidate(diff, con, seeds[i].first);
    if (cv.value > best_value) {
      best_value = cv.value;
      best_t = cv.t;
      best_index = i;
      best_psi = seeds[i].first;
    }
  }

  // coordinate-wise local refinement of the best seed
  double step = 0.25;
  for (int iter = 0; iter < budget.refine_iterations && step > 1e-7; ++iter) {
    bool improved = false;
    for (int idx = 0; idx < n; ++idx) {
      static const Complex directions[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (const Complex& dir : directions) {
        Vector trial = best_psi;
        trial(idx) += step * dir;
        trial /= trial.norm();
        const CandidateValue cv = evaluate_candidate(diff, con, trial);
        if (cv.value > best_value + 1e-15) {
          best_value = cv.value;
          best_t = cv.t;
          best_psi = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  NormEstimate estimate;
  estimate.lower_bound = best_value;
  estimate.budget = budget;
  estimate.constraint = con.describe();
  estimate.best_input = format_params("seed=%zu (%s) t=%.6g", best_index,
                                      seeds[best_index].second.c_str(), best_t);
  return estimate;
}

struct SlackTracker {
  double worst = kInf;
  std::string params;

  void record(double slack, std::string description) {
    if (slack < worst) {
      worst = slack;
      params = std::move(description);
    }
  }
};

LemmaReport finish(const char* lemma, int trials, int skipped,
                   const SlackTracker& tracker, std::uint64_t seed,
                   const Tolerances& tol, double tolerance_used) {
  LemmaReport report;
  report.lemma = lemma;
  report.trials = trials;
  report.skipped = skipped;
  report.worst_slack = (tracker.worst == kInf) ? 0.0 : tracker.worst;
  report.worst_params = tracker.params;
  report.seed = seed;
  report.tolerances = tol;
  report.passed = report.worst_slack >= -tolerance_used;
  return report;
}

} // namespace

NormEstimate ecd_lower_bound(const QuantumChannel& ch0, const QuantumChannel& ch1,
                             double nbar, const SearchBudget& budget,
                             std::uint64_t seed, int search_levels) {
  if (!(nbar >= 0.0)) throw InvalidParameter("ecd_lower_bound: nbar must be >= 0");
  Constraint con;
  con.kind = Constraint::Kind::MeanEnergy;
  con.cap = nbar;
  return lower_bound_impl(ch0, ch1, con, budget, seed, search_levels);
}

NormEstimate exp_lower_bound(const QuantumChannel& ch0, const QuantumChannel& ch1,
                             double omega, double Omega, const SearchBudget& budget,
                             std::uint64_t seed, int search_levels) {
  if (!(omega > 0.0)) throw InvalidParameter("exp_lower_bound: omega must be positive");
  if (!(Omega >= 1.0)) throw InvalidParameter("exp_lower_bound: Omega must be >= 1");
  Constraint con;
  con.kind = Constraint::Kind::ExpMoment;
  con.cap = Omega;
  con.omega = omega;
  return lower_bound_impl(ch0, ch1, con, budget, seed, search_levels);
}

LemmaReport check_gentle_measurement(int trials, int dim, std::uint64_t seed,
                                     const Tolerances& tol) {
  SlackTracker tracker;
  int skipped = 0;
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::for_trial(seed, t);
    const Matrix rho = random_density(rng, dim);
    const Matrix effect = random_effect(rng, dim);
    const double p = (effect * rho).trace().real();
    if (p <= 1e-12) { ++skipped; continue; }
    const Matrix root = matrix_sqrt(effect);
    const Matrix post = root * rho * root / p;
    const double lhs = 0.5 * fock::trace_norm(rho - post);
    const double rhs = std::sqrt(std::max(0.0, 1.0 - p));
    tracker.record(rhs - lhs, format_params("trial=%d p=%.6g", t, p));
  }
  return finish("gentle-measurement", trials, skipped, tracker, seed, tol,
                tol.inequality);
}

LemmaReport check_fock_truncation(int trials, int dim_a, int dim_c,
                                  std::uint64_t seed, const Tolerances& tol) {
  if (dim_a < 2) throw InvalidParameter("check_fock_truncation: dim_a must be >= 2");
  SlackTracker tracker;
  int skipped = 0;
  const Matrix number = fock::kron(fock::number_operator(dim_a),
                                   Matrix::Identity(dim_c, dim_c));
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::for_trial(seed, t);
    const Matrix rho = random_density(rng, dim_a * dim_c);
    const int d = 1 + static_cast<int>(rng.uniform() * (dim_a - 1));
    const Matrix proj = fock::kron(fock::level_projector(d, dim_a),
                                   Matrix::Identity(dim_c, dim_c));
    const Matrix truncated = proj * rho * proj;
    const double kept = truncated.trace().real();
    if (kept <= 1e-12) { ++skipped; continue; }
    const double lhs = 0.5 * fock::trace_norm(rho - truncated / kept);
    const double energy_full = (number * rho).trace().real();
    const double energy_kept = (number * truncated).trace().real();
    const double rhs = std::sqrt(std::max(0.0, energy_full - energy_kept) / d);
    tracker.record(rhs - lhs, format_params("trial=%d d=%d kept=%.6g", t, d, kept));
  }
  return finish("fock-truncation", trials, skipped, tracker, seed, tol,
                tol.inequality);
}

LemmaReport check_cj_truncation(int trials, std::uint64_t seed,
                                const Tolerances& tol) {
  static const double omegas[3] = {0.3, 1.0, 2.0};
  SlackTracker tracker;
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::for_trial(seed, t);
    const double omega = omegas[t % 3];
    const int d = 1 + static_cast<int>(rng.uniform() * 5.0);
    const int working = d + std::max(20, static_cast<int>(std::ceil(10.0 / omega)));
    const int dout = 2;
    const int kraus = working / dout + 1;
    const QuantumChannel ch =
        channels::random_channel(working, dout, kraus, rng.next_u64());
    const Matrix j = channels::modified_choi(ch, omega).state.matrix();
    const Matrix proj = fock::kron(fock::level_projector(d, working),
                                   Matrix::Identity(dout, dout));
    const double lhs = fock::trace_norm(j - proj * j * proj);
    // working-truncation tail added to the reported slack
    const double rhs = 2.0 * std::exp(-0.5 * omega * d) + std::exp(-omega * working);
    tracker.record(rhs - lhs,
                   format_params("trial=%d omega=%.2f d=%d D=%d", t, omega, d, working));
  }
  return finish("cj-truncation", trials, 0, tracker, seed, tol, tol.inequality);
}

LemmaReport check_ecd_choi_bound(int trials, std::uint64_t seed,
                               const Tolerances& tol) {
  SlackTracker tracker;
  const SearchBudget budget{96, 40};
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::for_trial(seed, t);
    const int din = 3 + static_cast<int>(rng.uniform() * 2.0);
    const int dout = 2 + static_cast<int>(rng.uniform() * 2.0);
    const QuantumChannel ch0 = channels::random_channel(din, dout, 2, rng.next_u64());
    const QuantumChannel ch1 = channels::random_channel(din, dout, 2, rng.next_u64());
    const double nbar = rng.uniform(0.2, 2.0);
    const double estimate =
        ecd_lower_bound(ch0, ch1, nbar, budget, rng.next_u64()).lower_bound;
    for (int d = 1; d <= din; ++d) {
      const double diff =
          fock::trace_norm(channels::truncated_choi(ch0, d).state.matrix() -
                           channels::truncated_choi(ch1, d).state.matrix());
      const double rhs = d * diff + 4.0 * std::sqrt(nbar / d);
      tracker.record(rhs - estimate,
                     format_params("trial=%d d=%d nbar=%.4f", t, d, nbar));
    }
  }
  return finish("ecd-choi-bound", trials, 0, tracker, seed, tol, tol.inequality);
}

LemmaReport check_expcut_choi_bound(int trials, std::uint64_t seed,
                               const Tolerances& tol) {
  SlackTracker tracker;
  const SearchBudget budget{96, 40};
  const int din = 8;
  const int levels = 4;
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::for_trial(seed, t);
    const double omega = (t % 2 == 0) ? 0.5 : 1.0;
    const double Omega = rng.uniform(1.5, 4.0);
    const int dout = 2 + static_cast<int>(rng.uniform() * 2.0);
    const int kraus = din / dout + 1;
    const QuantumChannel ch0 =
        channels::random_channel(din, dout, kraus, rng.next_u64());
    const QuantumChannel ch1 =
        channels::random_channel(din, dout, kraus, rng.next_u64());

    const double estimate =
        exp_lower_bound(ch0, ch1, omega, Omega, budget, rng.next_u64(), levels)
            .lower_bound;
    const double d_tilde = Omega / -std::expm1(-omega);
    const double diff =
        fock::trace_norm(channels::modified_choi(ch0, omega).state.matrix() -
                         channels::modified_choi(ch1, omega).state.matrix());
    tracker.record(d_tilde * diff - estimate,
                   format_params("trial=%d omega=%.2f Omega=%.4f", t, omega, Omega));

    // local-filtering identity: psi = (C (x) I) phi with
    // C_ij = psi_ij sqrt(e^{omega j} / (1 - e^{-omega})), second index filtered
    Vector psi = random_pure(rng, levels * levels);
    const double norm2 = -std::expm1(-omega);
    for (int damp = 0; damp < 200; ++damp) {
      double moment = 0.0;
      for (int i = 0; i < levels; ++i)
        for (int j = 0; j < levels; ++j)
          moment += std::exp(omega * j) * std::norm(psi(i * levels + j));
      if (moment <= Omega) break;
      for (int i = 0; i < levels; ++i)
        for (int j = 0; j < levels; ++j)
          psi(i * levels + j) *= std::exp(-0.25 * omega * j);
      psi /= psi.norm();
    }
    Matrix filter = Matrix::Zero(levels, din);
    for (int i = 0; i < levels; ++i)
      for (int j = 0; j < levels; ++j)
        filter(i, j) = psi(i * levels + j) * std::sqrt(std::exp(omega * j) / norm2);

    const fock::TwoModeSqueezed tms(omega, din);
    Vector reconstructed = Vector::Zero(levels * din);
    for (int j = 0; j < din; ++j) {
      const double c = tms.coefficient(j);
      for (int i = 0; i < levels; ++i)
        reconstructed(i * din + j) += c * filter(i, j);
    }
    Vector embedded = Vector::Zero(levels * din);
    for (int i = 0; i < levels; ++i)
      for (int j = 0; j < levels; ++j)
        embedded(i * din + j) = psi(i * levels + j);
    const double identity_residual = (reconstructed - embedded).cwiseAbs().maxCoeff();
    tracker.record(tol.identity - identity_residual,
                   format_params("trial=%d filter-identity", t));

    double frob2 = 0.0;
    for (int i = 0; i < levels; ++i)
      for (int j = 0; j < levels; ++j) frob2 += std::norm(filter(i, j));
    Eigen::JacobiSVD<Matrix> svd(filter);
    const double op2 = svd.singularValues()(0) * svd.singularValues()(0);
    tracker.record(frob2 - op2, format_params("trial=%d norm-chain-a", t));
    tracker.record(Omega / norm2 - frob2, format_params("trial=%d norm-chain-b", t));
  }
  return finish("expcut-choi-bound", trials, 0, tracker, seed, tol, tol.inequality);
}

LemmaReport check_mutual_info_bound(int trials, std::uint64_t seed,
                                    const Tolerances& tol) {
  SlackTracker tracker;
  const double omega = 1.0;
  const int dim = 20;
  const int dout = 3;
  const double bound_bits =
      bounds::gibbs_entropy(omega).entropy_nats / std::log(2.0);
  const fock::TwoModeSqueezed tms(omega, dim);
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::for_trial(seed, t);
    const int outcomes = 2 + static_cast<int>(rng.uniform() * 2.0);
    const std::vector<Matrix> povm = random_povm(rng, dim, outcomes);

    // modified Choi of the measure-and-prepare map, assembled in its
    // manifestly separable product form
    Matrix joint = Matrix::Zero(dim * dout, dim * dout);
    for (const Matrix& effect : povm) {
      const Matrix prep = random_density(rng, dout);
      Matrix weighted(dim, dim);
      for (int j = 0; j < dim; ++j)
        for (int jp = 0; jp < dim; ++jp)
          weighted(j, jp) =
              tms.coefficient(j) * tms.coefficient(jp) * effect(jp, j);
      joint += fock::kron(weighted, prep);
    }
    const double trace = joint.trace().real();
    const double mi = fock::mutual_information(
        fock::trusted_state(joint / trace), dim, dout);
    tracker.record(bound_bits + 1e-6 - mi,
                   format_params("trial=%d outcomes=%d mi=%.6f", t, outcomes, mi));
  }
  return finish("mutual-info", trials, 0, tracker, seed, tol, 1e-6);
}

LemmaReport check_norm_axioms(int trials, std::uint64_t seed,
                              const Tolerances& tol) {
  SlackTracker tracker;
  const int din = 3, dout = 3;
  const double nbar = 1.0;
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::for_trial(seed, t);
    const QuantumChannel a0 = channels::random_channel(din, dout, 2, rng.next_u64());
    const QuantumChannel a1 = channels::random_channel(din, dout, 2, rng.next_u64());
    const QuantumChannel b0 = channels::random_channel(din, dout, 2, rng.next_u64());
    const QuantumChannel b1 = channels::random_channel(din, dout, 2, rng.next_u64());

    // feasible bipartite input: random pure state mixed toward the vacuum
    // anchor until the first-factor energy budget holds
    const Vector psi = random_pure(rng, din * din);
    Matrix rho = psi * psi.adjoint();
    double energy = 0.0;
    Matrix rho2 = Matrix::Zero(din, din);
    for (int lvl = 0; lvl < din; ++lvl) {
      const auto block = rho.block(lvl * din, lvl * din, din, din);
      energy += lvl * block.trace().real();
      rho2 += block;
    }
    if (energy > nbar) {
      Matrix anchor = Matrix::Zero(din * din, din * din);
      anchor.block(0, 0, din, din) = rho2;
      const double mix = nbar / energy;
      rho = mix * rho + (1.0 - mix) * anchor;
    }

    const Matrix x0 = channels::apply_first(a0, rho, din) -
                      channels::apply_first(a1, rho, din);
    const Matrix x1 = channels::apply_first(b0, rho, din) -
                      channels::apply_first(b1, rho, din);

    const double base = fock::trace_norm(x0);
    for (double c : {-1.0, 0.37, -2.5}) {
      const double residual = std::abs(fock::trace_norm(c * x0) - std::abs(c) * base);
      tracker.record(tol.identity - residual,
                     format_params("trial=%d homogeneity c=%.2f", t, c));
    }
    const double triangle =
        fock::trace_norm(x0) + fock::trace_norm(x1) - fock::trace_norm(x0 + x1);
    tracker.record(triangle, format_params("trial=%d triangle", t));

    // positivity witness: vacuum, or a vacuum-weighted mixture
    const Matrix vac = Matrix::Identity(din, din).col(0) *
                       Matrix::Identity(din, din).col(0).adjoint();
    double witness = fock::trace_norm(a0.apply(vac) - a1.apply(vac));
    if (witness <= 1e-8) {
      for (int k = 1; k < din; ++k) {
        Matrix basis = Matrix::Zero(din, din);
        basis(k, k) = 1.0;
        const double p = std::min(1.0, nbar / k);
        const Matrix mixture = (1.0 - p) * vac + p * basis;
        witness = std::max(witness,
                           fock::trace_norm(a0.apply(mixture) - a1.apply(mixture)));
      }
    }
    tracker.record(witness - 1e-12, format_params("trial=%d positivity", t));
  }
  return finish("norm-axioms", trials, 0, tracker, seed, tol, tol.inequality);
}

LemmaReport check_povm_identity(int trials, std::uint64_t seed,
                                const Tolerances& tol) {
  SlackTracker tracker;
  for (int t = 0; t < trials; ++t) {
    RngStream rng = RngStream::for_trial(seed, t);
    const double omega = (t % 2 == 0) ? 0.5 : 1.0;
    const int dim = 3 + static_cast<int>(rng.uniform() * 2.0);
    const std::vector<int> fragments = {2, 2};
    const QuantumChannel ch = channels::random_channel(dim, 4, 2, rng.next_u64());

    // rank-1 projective conditioning on the traced-out fragment
    const Matrix gauge = random_matrix(rng, 2, 2);
    Eigen::JacobiSVD<Matrix> svd(gauge, Eigen::ComputeFullU);
    std::vector<Matrix> projectors;
    for (int k = 0; k < 2; ++k)
      projectors.push_back(svd.matrixU().col(k) * svd.matrixU().col(k).adjoint());

    const MeasurePrepare mp = channels::build_measure_prepare(
        ch, omega, fragments, 0, {1}, {projectors});

    Matrix sum = Matrix::Zero(dim, dim);
    for (const Matrix& effect : mp.effects()) {
      sum += effect;
      Eigen::SelfAdjointEigenSolver<Matrix> solver(effect, Eigen::EigenvaluesOnly);
      tracker.record(solver.eigenvalues().minCoeff() + tol.identity,
                     format_params("trial=%d effect-positivity", t));

    }
    const double completeness =
        (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    tracker.record(tol.identity - completeness,
                   format_params("trial=%d completeness", t));

    // product form of the modified Choi state; the conditioned input
    // marginals are recovered from the effects through the inverse filter
    const double norm2 = -std::expm1(-omega);
    Matrix inverse_filter = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) inverse_filter(i, i) = std::exp(-0.5 * omega * i);
    Matrix expected = Matrix::Zero(dim * 2, dim * 2);
    for (std::size_t z = 0; z < mp.effects().size(); ++z) {
      const Matrix marginal =
          (inverse_filter * mp.effects()[z] * inverse_filter).transpose() * norm2;
      expected += fock::kron(marginal, mp.prepared()[z]);
    }
    const Matrix actual = channels::modified_choi(mp.to_channel(), omega).state.matrix();
    const double residual = (actual - expected).cwiseAbs().maxCoeff();
    tracker.record(tol.identity - residual,
                   format_params("trial=%d choi-product-form", t));

    // entanglement breaking: positive partial transpose of the truncated Choi
    const channels::TruncatedChoi tc = channels::truncated_choi(mp.to_channel(), dim);
    Eigen::SelfAdjointEigenSolver<Matrix> ppt(
        fock::partial_transpose_second(tc.state.matrix(), dim, 2),
        Eigen::EigenvaluesOnly);
    tracker.record(ppt.eigenvalues().minCoeff() + tol.inequality,
                   format_params("trial=%d ppt", t));
  }
  // each recorded slack already includes its own allowance
  return finish("povm-identity", trials, 0, tracker, seed, tol, 0.0);
}

std::string to_json(const LemmaReport& report) {
  nlohmann::ordered_json j;
  j["lemma"] = report.lemma;
  j["trials"] = report.trials;
  j["skipped"] = report.skipped;
  j["worst_slack"] = report.worst_slack;
  j["worst_params"] = report.worst_params;
  j["seed"] = report.seed;
  j["tolerances"] = {{"inequality", report.tolerances.inequality},
                     {"identity", report.tolerances.identity}};
  j["passed"] = report.passed;
  return j.dump();
}

} // namespace qdarwin::verify
