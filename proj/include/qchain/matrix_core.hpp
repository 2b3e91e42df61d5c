#pragma once

// Hermitian eigendecompositions and spectral matrix functions (support-aware
// log, fractional complex powers) with a fixed tolerance policy and
// deterministic eigenvector ordering, plus the small dense-matrix utilities
// (kron, vectorization, partial traces) the rest of the library builds on.

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace qchain {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

namespace tol {
// Hermiticity check: |A - A†| <= kHermiticity * (1 + max|entry|).
inline constexpr double kHermiticity = 1e-12;
// Support cutoff: eigenvalues above kSupportCut * lambda_max count as nonzero.
inline constexpr double kSupportCut = 1e-10;
// PSD acceptance: eigenvalues >= -kPsdEig * lambda_max (then clamped to 0).
inline constexpr double kPsdEig = 1e-10;
// Eigenvalues closer than kDegeneracyGap * max|lambda| merge into one group.
inline constexpr double kDegeneracyGap = 1e-8;
// Probability weights at or below this are treated as exact zeros.
inline constexpr double kProbFloor = 1e-14;
}  // namespace tol

// Base used by every logarithm/entropy the library reports (default 2, so the
// counterexample arithmetic comes out in bits). Matrix powers always use the
// natural-log exponent and are unaffected.
double log_base();
void set_log_base(double base);
double log_of(double x);       // log_base(x)
double exp_of(double x);       // base^x, inverse of log_of

double max_abs(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_power(const Matrix& a, int n);

// Column-stacking vectorization and its inverse.
Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, int rows, int cols);

// Partial traces of an operator on C^{d_a} (x) C^{d_b}, index = i_a*d_b + i_b.
Matrix partial_trace_a(const Matrix& x, int d_a, int d_b);
Matrix partial_trace_b(const Matrix& x, int d_a, int d_b);

class HermitianMatrix {
 public:
  explicit HermitianMatrix(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;  // exact Hermitian part of the validated input
};

// Spectral data of a Hermitian operator. Eigenvalues are sorted descending;
// projectors are rank one unless degeneracy grouping was requested, in which
// case there is one projector per eigenvalue cluster.
struct Spectral {
  RealVector eigenvalues;
  std::vector<Matrix> projectors;
  Matrix basis;  // unitary; column k is the k-th (sorted, phase-fixed) eigenvector

  int dim() const { return static_cast<int>(basis.rows()); }
  Matrix reconstruct() const;
};

enum class Grouping { none, degenerate };

// Deterministic Hermitian eigendecomposition: eigenvalues descending, each
// eigenvector's largest-magnitude component made real positive, exact
// eigenvalue ties broken by lexicographic comparison of eigenvector entries.
Spectral eig_hermitian(const HermitianMatrix& h, Grouping grouping = Grouping::none);

class PsdMatrix {
 public:
  explicit PsdMatrix(const HermitianMatrix& h);
  explicit PsdMatrix(Matrix m) : PsdMatrix(HermitianMatrix(std::move(m))) {}

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  // Rank-one spectral decomposition, computed once at construction.
  const Spectral& spectral() const { return *spectral_; }
  double trace() const { return m_.trace().real(); }
  double lambda_max() const;

 private:
  Matrix m_;  // reconstruction from the clamped spectrum
  std::shared_ptr<const Spectral> spectral_;
};

// Projector onto the span of eigenvectors with lambda > rel_tol * lambda_max.
// The zero matrix yields the zero projector.
Matrix support_projector(const PsdMatrix& a, double rel_tol = tol::kSupportCut);

// Sum of log_base(lambda_k) P_k over the support; zero on the kernel.
Matrix mat_log_support(const PsdMatrix& a);

// Sum of exp(alpha * ln lambda_k) P_k over the support; the kernel maps to
// zero even for negative real part of alpha (pseudo-inverse-power convention).
Matrix frac_power(const PsdMatrix& a, Complex alpha);

}  // namespace qchain
