#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qchain/divergences.hpp"
#include "qchain/recovery.hpp"
#include "test_helpers.hpp"

using namespace qchain;
using test::check_close;
using test::random_hermitian;

namespace {

// Independent adaptive-quadrature oracle for the beta_0 mass on [-T, T].
double beta0_mass_oracle(double cutoff) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      [](double t) { return beta0(t); }, -cutoff, cutoff, 12, 1e-13);
}

Matrix random_support_state(const PsdMatrix& anchor, std::uint64_t seed) {
  const Matrix projector = support_projector(anchor);
  const Matrix raw = test::random_psd_matrix(anchor.dim(), anchor.dim(), seed);
  Matrix cut = projector * raw * projector;
  return cut / cut.trace().real();
}

}  // namespace

TEST_CASE("beta0 quadrature mass against the adaptive oracle") {
  const QuadratureScheme q = build_quadrature();
  CHECK(q.nodes.size() == 400);
  const double oracle_full = beta0_mass_oracle(12.0);
  // Closed form of the truncated mass: tanh(pi T / 2).
  CHECK(oracle_full == doctest::Approx(std::tanh(6.0 * std::numbers::pi)).epsilon(1e-12));
  CHECK(std::abs(q.total_mass() - oracle_full) < 1e-9);
  CHECK(std::abs(q.total_mass() - 1.0) < 1e-8);

  // Short truncation loses visible mass (8 nodes also leave a coarse
  // quadrature error, so compare loosely).
  const QuadratureScheme truncated = build_quadrature(8, 2.0);
  const double oracle_short = beta0_mass_oracle(2.0);
  CHECK(oracle_short < 0.999);
  CHECK(std::abs(truncated.total_mass() - oracle_short) < 2e-2);
  CHECK(truncated.total_mass() < 0.999);

  // Nodes and weights are symmetric under t -> -t.
  const int n = static_cast<int>(q.nodes.size());
  for (int k = 0; k < n / 2; ++k) {
    CHECK(q.nodes[k] == doctest::Approx(-q.nodes[n - 1 - k]).epsilon(1e-14));
    CHECK(q.weights[k] == doctest::Approx(q.weights[n - 1 - k]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(build_quadrature(4, 12.0), std::invalid_argument);
  CHECK_THROWS_AS(build_quadrature(400, -1.0), std::invalid_argument);
}

TEST_CASE("gauss_legendre integrates low-degree polynomials exactly") {
  RealVector nodes, weights;
  gauss_legendre(5, -1.0, 3.0, nodes, weights);
  double integral = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double x = nodes[k];
    integral += weights[k] * (x * x * x - 2.0 * x + 1.0);
  }
  // Antiderivative x^4/4 - x^2 + x evaluated on [-1, 3] gives 16.
  CHECK(integral == doctest::Approx(16.0).epsilon(1e-13));
}

TEST_CASE("twisted map at t = 0 with gamma = m(sigma) is the Petz map") {
  const DensityMatrix sigma = random_density(3, 3, 60);
  const Channel m = random_channel(3, 3, 2, 61);
  const PsdMatrix gamma{m.apply(sigma.matrix())};

  const Superoperator petz = twisted_map(gamma, sigma, m, 0.0);
  // Petz fixed point: recovering m(sigma) returns sigma.
  check_close(petz.apply(m.apply(sigma.matrix())), sigma.matrix(), 1e-10);

  // Textbook composition sigma^{1/2} m^dag(gamma^{-1/2} X gamma^{-1/2}) sigma^{1/2}.
  const Matrix g_half = frac_power(gamma, -0.5);
  const Matrix s_half = frac_power(sigma.psd(), 0.5);
  const Matrix textbook = kron(s_half.transpose(), s_half) *
                          kraus_superoperator(m.as_kraus_map()).matrix.adjoint() *
                          kron(g_half.transpose(), g_half);
  check_close(petz.matrix, textbook, 1e-10);
}

TEST_CASE("twisted map of the identity channel is the identity on the support") {
  const DensityMatrix sigma = random_density(3, 3, 62);
  for (double t : {-1.3, 0.0, 2.7}) {
    const Superoperator r = twisted_map(sigma.psd(), sigma, Channel::identity(3), t);
    const Matrix x = random_support_state(sigma.psd(), 63);
    check_close(r.apply(x), x, 1e-9);
  }
}

TEST_CASE("rotated Petz maps preserve trace on the support of m(sigma)") {
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    const DensityMatrix sigma = random_density(3, 3, derive_seed(23, 1, trial));
    const Channel m = random_channel(3, 3, 2, derive_seed(23, 2, trial));
    const PsdMatrix gamma{m.apply(sigma.matrix())};
    GaussianStream pick(derive_seed(23, 3, trial));
    const double t = 6.0 * pick.uniform() - 3.0;
    const Superoperator r = twisted_map(gamma, sigma, m, t);
    const Matrix x = random_support_state(gamma, derive_seed(23, 4, trial));
    CHECK(std::abs(r.apply(x).trace().real() - x.trace().real()) < 1e-9);
  }
}

TEST_CASE("twisted and averaged maps are completely positive") {
  const QuadratureScheme q = build_quadrature(64, 12.0);
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const DensityMatrix sigma = random_density(2, 2, derive_seed(24, 5, trial));
    const DensityMatrix gamma_state = random_density(2, 2, derive_seed(24, 6, trial));
    const Channel m = random_channel(2, 2, 2, derive_seed(24, 7, trial));
    GaussianStream pick(derive_seed(24, 8, trial));
    const double t = 6.0 * pick.uniform() - 3.0;

    const Superoperator twisted = twisted_map(gamma_state.psd(), sigma, m, t);
    Eigen::SelfAdjointEigenSolver<Matrix> choi(twisted.choi());
    CHECK(choi.eigenvalues().minCoeff() >= -1e-8);

    if (trial % 10 == 0) {
      const Superoperator averaged = averaged_map(gamma_state.psd(), sigma, m, q);
      Eigen::SelfAdjointEigenSolver<Matrix> avg_choi(averaged.choi());
      CHECK(avg_choi.eigenvalues().minCoeff() >= -1e-8);
    }
  }
}

TEST_CASE("averaged map recovers sigma from m(sigma)") {
  const QuadratureScheme q = build_quadrature();
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const DensityMatrix sigma = random_density(3, 3, derive_seed(25, 9, trial));
    const Channel m = random_channel(3, 3, 2, derive_seed(25, 10, trial));
    const PsdMatrix gamma{m.apply(sigma.matrix())};
    const Superoperator rbar = averaged_map(gamma, sigma, m, q);
    check_close(rbar.apply(m.apply(sigma.matrix())), sigma.matrix(), 1e-7);
  }
  const DensityMatrix sigma = random_density(3, 2, 77);
  const Superoperator rbar = averaged_map(sigma.psd(), sigma, Channel::identity(3), q);
  const Matrix x = random_support_state(sigma.psd(), 78);
  check_close(rbar.apply(x), x, 1e-7);
}

TEST_CASE("averaged_apply matches the assembled superoperator") {
  const QuadratureScheme q = build_quadrature(64, 12.0);
  const DensityMatrix sigma = random_density(3, 3, 80);
  const DensityMatrix gamma_state = random_density(3, 3, 81);
  const Channel m = random_channel(3, 3, 2, 82);
  const Matrix x = random_hermitian(3, 83);
  const Superoperator rbar = averaged_map(gamma_state.psd(), sigma, m, q);
  check_close(averaged_apply(gamma_state.psd(), sigma, m, q, x), rbar.apply(x), 1e-12);
}

TEST_CASE("doubling the node count leaves the averaged map unchanged") {
  const DensityMatrix sigma = random_density(3, 3, 84);
  const DensityMatrix gamma_state = random_density(3, 3, 85);
  const Channel m = random_channel(3, 3, 2, 86);
  const Superoperator coarse = averaged_map(gamma_state.psd(), sigma, m, build_quadrature());
  const Superoperator fine =
      averaged_map(gamma_state.psd(), sigma, m, build_quadrature(800, 12.0));
  CHECK(max_abs(coarse.matrix - fine.matrix) < 1e-8);
}

TEST_CASE("universal recovery bound on random instances") {
  const QuadratureScheme q = build_quadrature();
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    const int d = 2 + static_cast<int>(trial % 3);
    const DensityMatrix rho = random_density(d, d, derive_seed(26, 11, trial));
    const DensityMatrix sigma = random_density(d, d, derive_seed(26, 12, trial));
    const Channel m = random_channel(d, d, 2, derive_seed(26, 13, trial));
    const PsdMatrix gamma{m.apply(sigma.matrix())};

    const double loss =
        umegaki(rho, sigma).value() -
        umegaki(DensityMatrix(m.apply(rho.matrix())), PsdMatrix(m.apply(sigma.matrix()))).value();
    Matrix recovered = averaged_apply(gamma, sigma, m, q, m.apply(rho.matrix()));
    recovered /= recovered.trace().real();
    const double bound = -2.0 * log_of(fidelity(rho, DensityMatrix(recovered)));
    CHECK(loss >= bound - 1e-6);
  }
}

TEST_CASE("trace condition") {
  const QuadratureScheme q = build_quadrature();
  const DensityMatrix rho = random_density(3, 3, 90);
  const DensityMatrix sigma = random_density(3, 3, 91);
  const Channel m = random_channel(3, 3, 2, 92);
  const PsdMatrix gamma{m.apply(sigma.matrix())};

  // Matched reference states: the map is trace preserving, so T = 1.
  const DensityMatrix omega = random_density(3, 3, 93);
  const TraceCondition matched = trace_condition(rho, gamma, sigma, m, omega.psd(), q);
  CHECK(matched.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(matched.holds);

  // omega = 0 gives T = 0.
  const TraceCondition zero =
      trace_condition(rho, gamma, sigma, m, PsdMatrix(Matrix::Zero(3, 3)), q);
  CHECK(zero.value == doctest::Approx(0.0));
  CHECK(zero.holds);
}

TEST_CASE("exact Petz recovery implies zero entropy loss") {
  const QuadratureScheme q = build_quadrature();
  // Unitary channels are exactly recoverable.
  const Matrix u = random_unitary(3, 94);
  const Channel unitary({u}, 3, 3);
  const DensityMatrix rho = random_density(3, 3, 95);
  const DensityMatrix sigma = random_density(3, 3, 96);
  const PsdMatrix gamma{unitary.apply(sigma.matrix())};
  const Superoperator petz = twisted_map(gamma, sigma, unitary, 0.0);
  const Matrix recovered = petz.apply(unitary.apply(rho.matrix()));
  REQUIRE(max_abs(recovered - rho.matrix()) < 1e-8);
  const double loss = umegaki(rho, sigma).value() -
                      umegaki(DensityMatrix(unitary.apply(rho.matrix())),
                              PsdMatrix(unitary.apply(sigma.matrix())))
                          .value();
  CHECK(std::abs(loss) < 1e-6);

  // A generic lossy channel is not exactly recoverable and loses entropy.
  const Channel lossy = random_channel(3, 3, 3, 97);
  const PsdMatrix gamma2{lossy.apply(sigma.matrix())};
  const Superoperator petz2 = twisted_map(gamma2, sigma, lossy, 0.0);
  CHECK(max_abs(petz2.apply(lossy.apply(rho.matrix())) - rho.matrix()) > 1e-4);
}

TEST_CASE("recovery map dimension checks") {
  const DensityMatrix sigma = random_density(3, 3, 98);
  const Channel m = random_channel(3, 2, 2, 99);
  CHECK_THROWS_AS(twisted_map(sigma.psd(), sigma, m, 0.0), std::invalid_argument);
  const PsdMatrix gamma{m.apply(sigma.matrix())};
  CHECK_THROWS_AS(averaged_apply(gamma, sigma, m, build_quadrature(), Matrix::Identity(3, 3)),
                  std::invalid_argument);
}
