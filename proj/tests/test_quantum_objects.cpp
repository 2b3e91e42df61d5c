#include <cmath>

#include "test_helpers.hpp"

using namespace qchain;
using test::check_close;
using test::random_hermitian;

namespace {

Vector ket(std::initializer_list<Complex> amplitudes) {
  Vector v(static_cast<Eigen::Index>(amplitudes.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amplitudes) v[i++] = a;
  return v;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Channel fully_depolarizing_qubit() {
  std::vector<Matrix> kraus;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix k = Matrix::Zero(2, 2);
      k(i, j) = kInvSqrt2;
      kraus.push_back(k);
    }
  return Channel(std::move(kraus), 2, 2);
}

Channel replacement_channel(const Matrix& target, int d_in) {
  const Spectral s = eig_hermitian(HermitianMatrix(target));
  std::vector<Matrix> kraus;
  for (int i = 0; i < d_in; ++i)
    for (int m = 0; m < target.rows(); ++m) {
      if (s.eigenvalues[m] <= 1e-12) continue;
      Matrix k = Matrix::Zero(target.rows(), d_in);
      k.col(i) = std::sqrt(s.eigenvalues[m]) * s.basis.col(m);
      kraus.push_back(k);
    }
  return Channel(std::move(kraus), d_in, static_cast<int>(target.rows()));
}

}  // namespace

TEST_CASE("apply_channel on identity, depolarizing and replacement channels") {
  const DensityMatrix rho = random_density(2, 2, 5);
  check_close(apply_channel(Channel::identity(2), rho.matrix()), rho.matrix(), 1e-14);

  check_close(apply_channel(fully_depolarizing_qubit(), rho.matrix()),
              0.5 * Matrix::Identity(2, 2), 1e-12);

  // x -> Tr(x) |-><-| applied to |0><0| gives |-><-|.
  const Matrix minus = projector(ket({kInvSqrt2, -kInvSqrt2}));
  const Channel repl = replacement_channel(minus, 2);
  const Matrix zero = projector(ket({1.0, 0.0}));
  check_close(apply_channel(repl, zero), minus, 1e-12);

  CHECK_THROWS_AS(apply_channel(repl, Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("channel invariants over random instances") {
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    const int d = 2 + static_cast<int>(trial % 3);
    const Channel c = random_channel(d, d, 2, derive_seed(1, 10, trial));
    const DensityMatrix rho = random_density(d, d, derive_seed(1, 11, trial));
    const Matrix out = c.apply(rho.matrix());
    CHECK(std::abs(out.trace().real() - 1.0) < 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(out);
    CHECK(solver.eigenvalues().minCoeff() > -1e-9);
  }
}

TEST_CASE("Choi operators of generated channels are PSD") {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const int d = 2 + static_cast<int>(trial % 3);
    const Channel c = random_channel(d, d + 1, 2, derive_seed(2, 12, trial));
    Eigen::SelfAdjointEigenSolver<Matrix> solver(c.choi());
    CHECK(solver.eigenvalues().minCoeff() >= -1e-9);
    // Trace of the Choi operator is d_in for a TP map.
    CHECK(std::abs(c.choi().trace().real() - d) < 1e-9);
  }
}

TEST_CASE("adjoint channel is unital and Hilbert-Schmidt dual") {
  const Matrix u = random_unitary(3, 21);
  const Channel unitary({u}, 3, 3);
  const Matrix x = random_hermitian(3, 22);
  check_close(unitary.adjoint().apply(u * x * u.adjoint()), x, 1e-12);
  check_close(Channel::identity(3).adjoint().apply(x), x, 1e-14);

  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    const Channel c = random_channel(3, 3, 3, derive_seed(3, 13, trial));
    const KrausMap adj = adjoint_channel(c);
    check_close(adj.apply(Matrix::Identity(3, 3)), Matrix::Identity(3, 3), 1e-9);
    const Matrix a = random_hermitian(3, derive_seed(3, 14, trial));
    const Matrix b = random_hermitian(3, derive_seed(3, 15, trial));
    const Complex lhs = (a * c.apply(b)).trace();
    const Complex rhs = (adj.apply(a) * b).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("pinching channel") {
  // Maximally mixed sigma: a single eigenspace, so pinching is the identity.
  const DensityMatrix mixed(Matrix(0.5 * Matrix::Identity(2, 2)));
  const Channel pinch_mixed = pinching_channel(mixed);
  CHECK(pinch_mixed.kraus().size() == 1);
  const Matrix x = random_hermitian(2, 31);
  check_close(pinch_mixed.apply(x), x, 1e-12);

  // Nondegenerate diagonal sigma: output is the diagonal part.
  Matrix diag_sigma = Matrix::Zero(2, 2);
  diag_sigma(0, 0) = 0.9;
  diag_sigma(1, 1) = 0.1;
  const Channel pinch_diag = pinching_channel(DensityMatrix(diag_sigma));
  Matrix dephased = pinch_diag.apply(x);
  CHECK(std::abs(dephased(0, 1)) < 1e-12);
  CHECK(std::abs(dephased(0, 0) - x(0, 0)) < 1e-12);

  // sigma in the |+>/|-> basis: hand oracle <±|0><0|±> = 1/2 per branch.
  const Vector plus = ket({kInvSqrt2, kInvSqrt2});
  const Vector minus = ket({kInvSqrt2, -kInvSqrt2});
  const Matrix sigma = 0.9 * projector(plus) + 0.1 * projector(minus);
  const Channel pinch = pinching_channel(DensityMatrix(sigma));
  check_close(pinch.apply(projector(ket({1.0, 0.0}))), 0.5 * Matrix::Identity(2, 2), 1e-12);

  // Pinched outputs commute with sigma; sigma itself is a fixed point.
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const DensityMatrix s = random_density(3, 3, derive_seed(4, 16, trial));
    const Channel pinch_s = pinching_channel(s);
    check_close(pinch_s.apply(s.matrix()), s.matrix(), 1e-10);
    const Matrix out = pinch_s.apply(random_density(3, 3, derive_seed(4, 17, trial)).matrix());
    CHECK(max_abs(out * s.matrix() - s.matrix() * out) < 1e-9);
  }
}

TEST_CASE("cq_channel") {
  std::vector<PsdMatrix> proj;
  proj.emplace_back(projector(ket({1.0, 0.0})));
  proj.emplace_back(projector(ket({0.0, 1.0})));
  const Povm canonical(proj);

  // All outputs maximally mixed: the replacement channel to I/d.
  const DensityMatrix half(Matrix(0.5 * Matrix::Identity(2, 2)));
  const Channel to_mixed = cq_channel(canonical, {half, half});
  check_close(to_mixed.apply(random_density(2, 2, 41).matrix()), half.matrix(), 1e-12);

  // Input Pi_0 maps to tau_0.
  const DensityMatrix tau0 = random_density(2, 2, 42);
  const DensityMatrix tau1 = random_density(2, 2, 43);
  const Channel cq = cq_channel(canonical, {tau0, tau1});
  check_close(cq.apply(projector(ket({1.0, 0.0}))), tau0.matrix(), 1e-12);

  // Joint-convexity harness: rho = sum p_j Pi_j maps to sum p_j tau_j.
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 0.3;
  rho(1, 1) = 0.7;
  check_close(cq.apply(rho), 0.3 * tau0.matrix() + 0.7 * tau1.matrix(), 1e-12);

  CHECK_THROWS_AS(cq_channel(canonical, {tau0}), std::invalid_argument);
  std::vector<PsdMatrix> skew;
  skew.emplace_back(Matrix(0.5 * Matrix::Identity(2, 2)));
  skew.emplace_back(Matrix(0.5 * Matrix::Identity(2, 2)));
  CHECK_THROWS_AS(cq_channel(Povm(skew), {tau0, tau1}), std::invalid_argument);
}

TEST_CASE("bipartite_omega conventions") {
  // Maximally mixed tau with the identity channel: maximally entangled state.
  const int d = 2;
  const DensityMatrix mixed(Matrix(Matrix::Identity(d, d) / d));
  Vector phi = Vector::Zero(d * d);
  for (int k = 0; k < d; ++k) phi[k * d + k] = 1.0 / std::sqrt(2.0);
  const Matrix entangled = phi * phi.adjoint();
  for (auto convention : {OmegaConvention::purification, OmegaConvention::transpose}) {
    const BipartiteState omega = bipartite_omega(mixed, Channel::identity(d), convention);
    check_close(omega.state.matrix(), entangled, 1e-12);
  }

  // Pure tau with the identity channel: |0><0| (x) |0><0|.
  const DensityMatrix pure(Matrix(projector(ket({1.0, 0.0}))));
  const BipartiteState omega_pure =
      bipartite_omega(pure, Channel::identity(2), OmegaConvention::purification);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  check_close(omega_pure.state.matrix(), expected, 1e-12);

  // Partial-trace oracle: tracing out the channel output recovers tau.
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    const DensityMatrix tau = random_density(3, 3, derive_seed(5, 18, trial));
    const Channel c = random_channel(3, 2, 2, derive_seed(5, 19, trial));
    for (auto convention : {OmegaConvention::purification, OmegaConvention::transpose}) {
      const BipartiteState omega = bipartite_omega(tau, c, convention);
      check_close(partial_trace_b(omega.state.matrix(), 3, 2), tau.matrix(), 1e-9);
    }
  }

  CHECK_THROWS_AS(
      bipartite_omega(mixed, random_channel(3, 3, 2, 7), OmegaConvention::purification),
      std::invalid_argument);
}

TEST_CASE("random generators are deterministic in the seed") {
  const DensityMatrix a = random_density(4, 4, 123);
  const DensityMatrix b = random_density(4, 4, 123);
  CHECK(max_abs(a.matrix() - b.matrix()) == 0.0);
  CHECK(std::abs(a.matrix().trace().real() - 1.0) < 1e-12);
  CHECK(a.spectral().eigenvalues.minCoeff() > 1e-6);  // full rank by construction

  const Povm g1 = random_povm(3, 5, 77);
  const Povm g2 = random_povm(3, 5, 77);
  for (int j = 0; j < g1.size(); ++j)
    CHECK(max_abs(g1.element(j).matrix() - g2.element(j).matrix()) == 0.0);
  CHECK(max_abs(random_channel(3, 3, 2, 9).kraus()[0] -
                random_channel(3, 3, 2, 9).kraus()[0]) == 0.0);
  CHECK(max_abs(random_density(4, 4, 123).matrix() - random_density(4, 4, 124).matrix()) > 1e-3);
}

TEST_CASE("random channel isometry identity") {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const Channel c = random_channel(4, 3, 2, derive_seed(6, 20, trial));
    Matrix sum = Matrix::Zero(4, 4);
    for (const auto& k : c.kraus()) sum += k.adjoint() * k;
    CHECK(max_abs(sum - Matrix::Identity(4, 4)) < 1e-10);
  }
  CHECK_THROWS_AS(random_channel(4, 3, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_density(3, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_povm(3, 0, 1), std::invalid_argument);
}

TEST_CASE("DensityMatrix and Povm validation") {
  CHECK_THROWS_AS(DensityMatrix{Matrix(2.0 * Matrix::Identity(2, 2))}, std::invalid_argument);
  std::vector<PsdMatrix> bad;
  bad.emplace_back(Matrix(0.5 * Matrix::Identity(2, 2)));
  CHECK_THROWS_AS(Povm{bad}, std::invalid_argument);
}
