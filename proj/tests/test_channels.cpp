#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdarwin/channels.hpp"
#include "qdarwin/rng.hpp"

using namespace qdarwin;
using channels::QuantumChannel;
using fock::Matrix;
using fock::Vector;

namespace {

Matrix random_density(RngStream& rng, int dim) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

QuantumChannel broadcast_two_copies(int dim) {
  // isometry |i> -> |i,i>
  Matrix v = Matrix::Zero(dim * dim, dim);
  for (int i = 0; i < dim; ++i) v(i * dim + i, i) = 1.0;
  return QuantumChannel::from_isometry(v);
}

} // namespace

TEST_CASE("channel construction validates the Kraus list") {
  CHECK_THROWS_AS(QuantumChannel(std::vector<Matrix>{}), InvalidOperator);
  CHECK_THROWS_AS(QuantumChannel({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}),
                  ShapeError);
  CHECK_THROWS_AS(QuantumChannel({0.5 * Matrix::Identity(2, 2)}), InvalidOperator);
}

TEST_CASE("channel application on basic examples") {
  RngStream rng(1);
  const Matrix rho = random_density(rng, 3);

  const auto id = QuantumChannel::identity(3);
  CHECK((id.apply(rho) - rho).cwiseAbs().maxCoeff() < 1e-14);

  const auto dephase = QuantumChannel::dephasing(3);
  const Matrix diag = dephase.apply(rho);
  CHECK(std::abs(diag(0, 1)) < 1e-14);
  CHECK(std::abs(diag(1, 2)) < 1e-14);
  CHECK(std::abs(diag(0, 0) - rho(0, 0)) < 1e-14);

  const auto random = channels::random_channel(3, 4, 2, 99);
  CHECK(std::abs(random.apply(rho).trace().real() - 1.0) < 1e-10);
  CHECK_THROWS_AS(random.apply(Matrix::Identity(5, 5)), ShapeError);
}

TEST_CASE("random channels: determinism, unitarity, completeness") {
  const auto a = channels::random_channel(3, 3, 2, 12345);
  const auto b = channels::random_channel(3, 3, 2, 12345);
  for (std::size_t i = 0; i < a.kraus().size(); ++i)
    CHECK((a.kraus()[i] - b.kraus()[i]).cwiseAbs().maxCoeff() == 0.0);

  const auto unitary = channels::random_channel(4, 4, 1, 7);
  CHECK((unitary.kraus()[0].adjoint() * unitary.kraus()[0] -
         Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ch = channels::random_channel(3, 2, 3, seed);
    Matrix sum = Matrix::Zero(3, 3);
    for (const Matrix& k : ch.kraus()) sum += k.adjoint() * k;
    CHECK((sum - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
  }
  CHECK_THROWS_AS(channels::random_channel(5, 2, 1, 1), InvalidParameter);
}

TEST_CASE("truncated Choi states") {
  const auto id2 = channels::truncated_choi(QuantumChannel::identity(2), 2);
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  CHECK((id2.state.matrix() - phi * phi.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(id2.state.trace() == doctest::Approx(1.0).epsilon(1e-14));

  const auto depol = channels::truncated_choi(QuantumChannel::depolarizing(3, 2), 3);
  const Matrix product = fock::kron(Matrix::Identity(3, 3) / 3.0,
                                    Matrix::Identity(2, 2) / 2.0);
  CHECK((depol.state.matrix() - product).cwiseAbs().maxCoeff() < 1e-14);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto ch = channels::random_channel(4, 3, 2, seed);
    for (int d = 1; d <= 4; ++d) {
      const auto jt = channels::truncated_choi(ch, d);
      const Matrix marginal = fock::partial_trace(jt.state.matrix(), d, 3,
                                                  fock::Keep::SubsystemA);
      CHECK((marginal - Matrix::Identity(d, d) / d).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  CHECK_THROWS_AS(channels::truncated_choi(QuantumChannel::identity(2), 3),
                  ShapeError);
}

TEST_CASE("modified Choi states") {
  const double omega = 0.8;
  const auto id = channels::modified_choi(QuantumChannel::identity(4), omega);
  const auto tms = fock::two_mode_squeezed(omega, 4);
  CHECK((id.state.matrix() - tms.matrix()).cwiseAbs().maxCoeff() < 1e-14);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto ch = channels::random_channel(4, 3, 3, seed);
    const auto j = channels::modified_choi(ch, omega);
    CHECK(j.state.trace() ==
          doctest::Approx(-std::expm1(-omega * 4)).epsilon(1e-12));
    const Matrix marginal = fock::partial_trace(j.state.matrix(), 4, 3,
                                                fock::Keep::SubsystemA);
    const auto gibbs = fock::gibbs_state(omega, 4, fock::GibbsMode::ExactTail);
    CHECK((marginal - gibbs.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("fragment channels of the two-copy broadcast dephase") {
  const auto broadcast = broadcast_two_copies(2);
  RngStream rng(2);
  const Matrix rho = random_density(rng, 2);
  const Matrix expected = QuantumChannel::dephasing(2).apply(rho);

  for (int j : {0, 1}) {
    const auto frag = channels::fragment_channel(broadcast, {2, 2}, j);
    CHECK((frag.apply(rho) - expected).cwiseAbs().maxCoeff() < 1e-10);
  }

  // a single fragment keeps the channel itself
  const auto ch = channels::random_channel(3, 4, 2, 8);
  const auto same = channels::fragment_channel(ch, {4}, 0);
  const Matrix rho3 = random_density(rng, 3);
  CHECK((same.apply(rho3) - ch.apply(rho3)).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS_AS(channels::fragment_channel(broadcast, {2, 2}, 2), IndexError);
  CHECK_THROWS_AS(channels::fragment_channel(broadcast, {3, 2}, 0), ShapeError);
}

TEST_CASE("channel reconstructed from its Choi matrix acts identically") {
  RngStream rng(6);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto ch = channels::random_channel(3, 4, 3, seed);
    const auto back = channels::channel_from_choi(ch.choi_matrix(), 3, 4);
    const Matrix rho = random_density(rng, 3);
    CHECK((back.apply(rho) - ch.apply(rho)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("measure-and-prepare construction with no conditioning is trivial") {
  const double omega = 1.0;
  const auto ch = channels::random_channel(4, 4, 2, 21);
  const auto mp = channels::build_measure_prepare(ch, omega, {2, 2}, 0, {}, {});
  REQUIRE(mp.effects().size() == 1);
  CHECK((mp.effects()[0] - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(mp.weights()[0] == doctest::Approx(-std::expm1(-omega * 4)).epsilon(1e-10));
}

TEST_CASE("measure-and-prepare construction with projective conditioning") {
  const double omega = 0.5;
  RngStream rng(33);
  const auto ch = channels::random_channel(3, 4, 2, 77);

  const Matrix g(Matrix::NullaryExpr(2, 2, [&](Eigen::Index, Eigen::Index) {
    return rng.complex_normal();
  }));
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU);
  std::vector<Matrix> projectors;
  for (int k = 0; k < 2; ++k)
    projectors.push_back(svd.matrixU().col(k) * svd.matrixU().col(k).adjoint());

  const auto mp =
      channels::build_measure_prepare(ch, omega, {2, 2}, 0, {1}, {projectors});
  Matrix sum = Matrix::Zero(3, 3);
  for (const Matrix& effect : mp.effects()) sum += effect;
  CHECK((sum - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);

  // the modified Choi of the prepared channel has the product form
  const double norm2 = -std::expm1(-omega);
  Matrix unfilter = Matrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) unfilter(i, i) = std::exp(-0.5 * omega * i);
  Matrix expected = Matrix::Zero(6, 6);
  for (std::size_t z = 0; z < mp.effects().size(); ++z)
    expected += fock::kron(
        (unfilter * mp.effects()[z] * unfilter).transpose() * norm2,
        mp.prepared()[z]);
  const Matrix actual =
      channels::modified_choi(mp.to_channel(), omega).state.matrix();
  CHECK((actual - expected).cwiseAbs().maxCoeff() < 1e-10);

  // entanglement breaking: the truncated Choi state stays PPT
  const auto tc = channels::truncated_choi(mp.to_channel(), 3);
  Eigen::SelfAdjointEigenSolver<Matrix> ppt(
      fock::partial_transpose_second(tc.state.matrix(), 3, 2),
      Eigen::EigenvaluesOnly);
  CHECK(ppt.eigenvalues().minCoeff() >= -1e-9);

  // measure-and-prepare action agrees with the channel form
  const Matrix rho = random_density(rng, 3);
  CHECK((mp.apply(rho) - mp.to_channel().apply(rho)).cwiseAbs().maxCoeff() < 1e-9);

  // an incomplete conditioning POVM is rejected
  CHECK_THROWS_AS(channels::build_measure_prepare(ch, omega, {2, 2}, 0, {1},
                                                  {{projectors[0]}}),
                  InvalidPOVM);
}

TEST_CASE("measure-and-prepare validation") {
  const Matrix identity = Matrix::Identity(2, 2);
  const Matrix state = 0.5 * identity;
  CHECK_NOTHROW(channels::MeasurePrepare({identity}, {state}, {1.0}));
  CHECK_THROWS_AS(channels::MeasurePrepare({0.5 * identity}, {state}, {1.0}),
                  InvalidPOVM);
  CHECK_THROWS_AS(channels::MeasurePrepare({identity}, {2.0 * state}, {1.0}),
                  NotAState);
  CHECK_THROWS_AS(channels::MeasurePrepare({identity}, {state}, {-0.5}),
                  InvalidParameter);
}
