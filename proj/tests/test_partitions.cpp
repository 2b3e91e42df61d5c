#include <cmath>

#include "qchain/inequality_suite.hpp"
#include "test_helpers.hpp"

using namespace qchain;
using test::check_close;

namespace {

Povm canonical_projectors(int d) {
  std::vector<PsdMatrix> elements;
  for (int j = 0; j < d; ++j) {
    Matrix p = Matrix::Zero(d, d);
    p(j, j) = 1.0;
    elements.emplace_back(std::move(p));
  }
  return Povm(std::move(elements));
}

DensityMatrix diagonal_state(std::initializer_list<double> weights) {
  const int d = static_cast<int>(weights.size());
  Matrix m = Matrix::Zero(d, d);
  int i = 0;
  for (double w : weights) m(i, i) = Complex(w, 0.0), ++i;
  return DensityMatrix(std::move(m));
}

}  // namespace

TEST_CASE("ensemble_partition of the maximally mixed state under a projective POVM") {
  const int d = 3;
  const DensityMatrix mixed(Matrix(Matrix::Identity(d, d) / d));
  for (auto convention : {TransposeConvention::eigenbasis, TransposeConvention::canonical}) {
    const EnsemblePartition part = ensemble_partition(mixed, canonical_projectors(d), convention);
    for (int j = 0; j < d; ++j) {
      CHECK(part.weights[j] == doctest::Approx(1.0 / d));
      Matrix expected = Matrix::Zero(d, d);
      expected(j, j) = 1.0;
      check_close(part.states[static_cast<size_t>(j)].matrix(), expected, 1e-12);
    }
  }
}

TEST_CASE("partition states of a diagonal state under its eigenprojectors are the projectors") {
  // Commuting case: each projector is self-transpose in the right basis.
  const DensityMatrix rho = diagonal_state({0.5, 0.3, 0.2});
  const EnsemblePartition part =
      ensemble_partition(rho, canonical_projectors(3), TransposeConvention::eigenbasis);
  for (int j = 0; j < 3; ++j) {
    Matrix expected = Matrix::Zero(3, 3);
    expected(j, j) = 1.0;
    check_close(part.states[static_cast<size_t>(j)].matrix(), expected, 1e-10);
    CHECK(part.weights[j] == doctest::Approx(rho.matrix()(j, j).real()));
  }
}

TEST_CASE("ensemble_partition reconstruction identity") {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const DensityMatrix tau = random_density(3, 3, derive_seed(20, 1, trial));
    const Povm g = random_povm(3, 4, derive_seed(20, 2, trial));

    const EnsemblePartition eigen = ensemble_partition(tau, g, TransposeConvention::eigenbasis);
    Matrix sum = Matrix::Zero(3, 3);
    for (int j = 0; j < g.size(); ++j)
      sum += eigen.weights[j] * eigen.states[static_cast<size_t>(j)].matrix();
    check_close(sum, tau.matrix(), 1e-10);

    const EnsemblePartition canonical =
        ensemble_partition(tau, g, TransposeConvention::canonical);
    sum.setZero();
    for (int j = 0; j < g.size(); ++j)
      sum += canonical.weights[j] * canonical.states[static_cast<size_t>(j)].matrix();
    check_close(sum, tau.matrix().transpose(), 1e-10);

    // Weights agree with the measurement distribution exactly.
    const ProbVec probs = prob_from_povm(tau.matrix(), g, /*normalized=*/true);
    for (int j = 0; j < g.size(); ++j) CHECK(std::abs(eigen.weights[j] - probs[j]) < 1e-12);
  }
}

TEST_CASE("zero-weight outcomes are flagged placeholders") {
  const DensityMatrix pure = diagonal_state({1.0, 0.0});
  const EnsemblePartition part =
      ensemble_partition(pure, canonical_projectors(2), TransposeConvention::eigenbasis);
  CHECK_FALSE(part.zero_weight[0]);
  CHECK(part.zero_weight[1]);
  CHECK(part.weights[1] == doctest::Approx(0.0));
  // Placeholder is still a valid state.
  CHECK(part.states[1].matrix().trace().real() == doctest::Approx(1.0));
}

TEST_CASE("induced_stochastic structure") {
  // Identity channel, common projective POVMs, diagonal tau: the matrix is
  // the identity on the support of tau.
  const DensityMatrix tau = diagonal_state({0.6, 0.3, 0.1});
  const Povm g = canonical_projectors(3);
  const StochasticMatrix ident = induced_stochastic(tau, Channel::identity(3), g, g);
  check_close(Matrix(ident.matrix().cast<Complex>()), Matrix::Identity(3, 3), 1e-10);

  // Replacement channel: every column is the output distribution of omega0.
  const DensityMatrix omega0 = random_density(3, 3, 31);
  const Spectral& s = omega0.spectral();
  std::vector<Matrix> kraus;
  for (int i = 0; i < 3; ++i)
    for (int m = 0; m < 3; ++m) {
      Matrix k = Matrix::Zero(3, 3);
      k.col(i) = std::sqrt(s.eigenvalues[m]) * s.basis.col(m);
      kraus.push_back(k);
    }
  const Channel replace(std::move(kraus), 3, 3);
  const Povm f = random_povm(3, 4, 32);
  const StochasticMatrix cols = induced_stochastic(tau, replace, g, f);
  const ProbVec ref = prob_from_povm(omega0.matrix(), f, /*normalized=*/true);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) CHECK(std::abs(cols.matrix()(i, j) - ref[i]) < 1e-10);
}

TEST_CASE("induced_stochastic consistency identity") {
  // (induced matrix) P_tau^G = P_{c(tau)}^F, both sides computed directly.
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const DensityMatrix tau = random_density(3, 3, derive_seed(21, 3, trial));
    const Channel c = random_channel(3, 3, 2, derive_seed(21, 4, trial));
    const Povm g = random_povm(3, 4, derive_seed(21, 5, trial));
    const Povm f = random_povm(3, 5, derive_seed(21, 6, trial));
    const StochasticMatrix m = induced_stochastic(tau, c, g, f);
    const ProbVec in = prob_from_povm(tau.matrix(), g, /*normalized=*/true);
    const ProbVec out = prob_from_povm(c.apply(tau.matrix()), f, /*normalized=*/true);
    const RealVector pushed = m.matrix() * in.weights();
    CHECK((pushed - out.weights()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("measured_chain_audit trivial instance") {
  const DensityMatrix rho = random_density(3, 3, 41);
  const Channel m = random_channel(3, 3, 2, 42);
  const Povm g = random_povm(3, 4, 43);
  const Povm f = random_povm(3, 4, 44);
  const VerdictReport report = measured_chain_audit(rho, rho, m, m, g, f);
  CHECK(report.pass);
  CHECK(report.lhs.value() == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(report.rhs.value() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("measured_chain_audit reduces to the classical chain rule on commuting inputs") {
  const DensityMatrix rho = diagonal_state({0.5, 0.3, 0.2});
  const DensityMatrix sigma = diagonal_state({0.7, 0.2, 0.1});
  const Channel m = random_channel(3, 3, 2, 51);
  const Channel n = random_channel(3, 3, 2, 52);
  const Povm g = canonical_projectors(3);
  const Povm f = random_povm(3, 4, 53);

  const VerdictReport quantum = measured_chain_audit(rho, sigma, m, n, g, f);

  // Classical recomputation: the partitions are the projectors themselves,
  // so the induced stochastic matrices carry all channel information.
  const StochasticMatrix m_cl = induced_stochastic(rho, m, g, f);
  const StochasticMatrix n_cl = induced_stochastic(sigma, n, g, f);
  const ProbVec p = prob_from_povm(rho.matrix(), g, true);
  const ProbVec q = prob_from_povm(sigma.matrix(), g, true);
  const VerdictReport classical = classical_chain(p, q, m_cl, n_cl);

  CHECK(quantum.pass);
  CHECK(classical.pass);
  CHECK(quantum.lhs.value() == doctest::Approx(classical.lhs.value()).epsilon(1e-10));
  CHECK(quantum.rhs.value() == doctest::Approx(classical.rhs.value()).epsilon(1e-10));
}

TEST_CASE("measured_chain_audit holds on random instances") {
  for (std::uint64_t trial = 0; trial < 500; ++trial) {
    const int d = 2 + static_cast<int>(trial % 3);
    const DensityMatrix rho = random_density(d, d, derive_seed(22, 7, trial));
    const DensityMatrix sigma = random_density(d, d, derive_seed(22, 8, trial));
    const Channel m = random_channel(d, d, 2, derive_seed(22, 9, trial));
    const Channel n = random_channel(d, d, 2, derive_seed(22, 10, trial));
    const Povm g = random_povm(d, d + 1, derive_seed(22, 11, trial));
    const Povm f = random_povm(d, d + 1, derive_seed(22, 12, trial));
    const VerdictReport report = measured_chain_audit(rho, sigma, m, n, g, f);
    CHECK(report.pass);
    REQUIRE(report.slack.is_finite());
    CHECK(report.slack.value() >= -1e-8);
  }
}

TEST_CASE("StochasticMatrix validation") {
  RealMatrix bad(2, 2);
  bad << 0.5, 0.2, 0.4, 0.8;  // first column sums to 0.9
  CHECK_THROWS_AS(StochasticMatrix{bad}, std::invalid_argument);
  RealMatrix good(2, 2);
  good << 0.5, 0.2, 0.5, 0.8;
  const StochasticMatrix m{good};
  const ProbVec pushed = m.apply(ProbVec(RealVector::Constant(2, 0.5)));
  CHECK(pushed.weights().sum() == doctest::Approx(1.0));
}
