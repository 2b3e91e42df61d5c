#include "qchain/recovery.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qchain {

Matrix Superoperator::apply(const Matrix& x) const {
  if (x.rows() != d_in || x.cols() != d_in)
    throw std::invalid_argument("Superoperator::apply: operand dimension mismatch");
  return unvec(matrix * vec(x), d_out, d_out);
}

Matrix Superoperator::choi() const {
  Matrix choi = Matrix::Zero(static_cast<Eigen::Index>(d_in) * d_out,
                             static_cast<Eigen::Index>(d_in) * d_out);
  Matrix e = Matrix::Zero(d_in, d_in);
  for (int i = 0; i < d_in; ++i)
    for (int j = 0; j < d_in; ++j) {
      e(i, j) = 1.0;
      const Matrix mapped = apply(e);
      e(i, j) = 0.0;
      choi.block(i * d_out, j * d_out, d_out, d_out) = mapped;
    }
  return choi;
}

Superoperator sandwich_superoperator(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("sandwich_superoperator: operands must be square, same dim");
  const int d = static_cast<int>(a.rows());
  return Superoperator{d, d, kron(b.transpose(), a)};
}

Superoperator kraus_superoperator(const KrausMap& map) {
  Matrix s = Matrix::Zero(static_cast<Eigen::Index>(map.d_out) * map.d_out,
                          static_cast<Eigen::Index>(map.d_in) * map.d_in);
  for (const auto& k : map.kraus) s += kron(k.conjugate(), k);
  return Superoperator{map.d_in, map.d_out, std::move(s)};
}

double beta0(double t) {
  // cosh(pi t) + 1 = 2 cosh^2(pi t / 2); the sech form avoids overflow.
  const double c = std::cosh(std::numbers::pi * t / 2.0);
  return std::numbers::pi / (4.0 * c * c);
}

void gauss_legendre(int n, double a, double b, RealVector& nodes, RealVector& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  nodes.resize(n);
  weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration from the Chebyshev-based initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = mid - half * x;
    nodes[n - 1 - i] = mid + half * x;
    weights[i] = half * w;
    weights[n - 1 - i] = half * w;
  }
}

QuadratureScheme build_quadrature(int n_nodes, double cutoff) {
  if (n_nodes < 8) throw std::invalid_argument("build_quadrature: need at least 8 nodes");
  if (!(cutoff > 0.0)) throw std::invalid_argument("build_quadrature: cutoff must be positive");
  QuadratureScheme q;
  q.cutoff = cutoff;
  gauss_legendre(n_nodes, -cutoff, cutoff, q.nodes, q.weights);
  for (int k = 0; k < n_nodes; ++k) q.weights[k] *= beta0(q.nodes[k]);
  return q;
}

namespace {

// J^alpha_sigma o m^dag o J^{-alpha}_gamma at alpha = (1 - i t)/2, built from
// precomputed pieces so the quadrature loop stays cheap.
Matrix twisted_matrix(const PsdMatrix& gamma, const DensityMatrix& sigma,
                      const Matrix& adjoint_superop, double t) {
  const Complex alpha(0.5, -0.5 * t);
  const Matrix j_sigma =
      kron(frac_power(sigma.psd(), std::conj(alpha)).transpose(), frac_power(sigma.psd(), alpha));
  const Matrix j_gamma =
      kron(frac_power(gamma, -std::conj(alpha)).transpose(), frac_power(gamma, -alpha));
  return j_sigma * adjoint_superop * j_gamma;
}

void check_recovery_dims(const PsdMatrix& gamma, const DensityMatrix& sigma, const Channel& m) {
  if (gamma.dim() != m.d_out() || sigma.dim() != m.d_in())
    throw std::invalid_argument("recovery map: gamma must live on the channel output space and "
                                "sigma on its input space");
}

}  // namespace

Superoperator twisted_map(const PsdMatrix& gamma, const DensityMatrix& sigma, const Channel& m,
                          double t) {
  check_recovery_dims(gamma, sigma, m);
  const Matrix adj = kraus_superoperator(m.as_kraus_map()).matrix.adjoint();
  return Superoperator{m.d_out(), m.d_in(), twisted_matrix(gamma, sigma, adj, t)};
}

Superoperator averaged_map(const PsdMatrix& gamma, const DensityMatrix& sigma, const Channel& m,
                           const QuadratureScheme& q) {
  check_recovery_dims(gamma, sigma, m);
  const Matrix adj = kraus_superoperator(m.as_kraus_map()).matrix.adjoint();
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(m.d_in()) * m.d_in(),
                            static_cast<Eigen::Index>(m.d_out()) * m.d_out());
  for (int k = 0; k < q.nodes.size(); ++k)
    sum += q.weights[k] * twisted_matrix(gamma, sigma, adj, q.nodes[k]);
  return Superoperator{m.d_out(), m.d_in(), std::move(sum)};
}

Matrix averaged_apply(const PsdMatrix& gamma, const DensityMatrix& sigma, const Channel& m,
                      const QuadratureScheme& q, const Matrix& x) {
  check_recovery_dims(gamma, sigma, m);
  if (x.rows() != m.d_out() || x.cols() != m.d_out())
    throw std::invalid_argument("averaged_apply: operand dimension mismatch");
  const KrausMap adj = m.adjoint();
  Matrix sum = Matrix::Zero(m.d_in(), m.d_in());
  for (int k = 0; k < q.nodes.size(); ++k) {
    const Complex alpha(0.5, -0.5 * q.nodes[k]);
    const Matrix g_neg = frac_power(gamma, -alpha);
    const Matrix s_pos = frac_power(sigma.psd(), alpha);
    const Matrix inner = adj.apply(g_neg * x * g_neg.adjoint());
    sum += q.weights[k] * (s_pos * inner * s_pos.adjoint());
  }
  return sum;
}

TraceCondition trace_condition(const DensityMatrix& rho, const PsdMatrix& gamma,
                               const DensityMatrix& sigma, const Channel& m,
                               const PsdMatrix& omega, const QuadratureScheme& q) {
  if (rho.dim() != m.d_in() || omega.dim() != m.d_out())
    throw std::invalid_argument("trace_condition: dimension mismatch");
  const Matrix recovered = averaged_apply(gamma, sigma, m, q, omega.matrix());
  const double value = (support_projector(rho.psd()) * recovered).trace().real();
  return TraceCondition{value, value <= 1.0 + 1e-8};
}

}  // namespace qchain
