#include "qchain/matrix_core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qchain {

namespace {

std::atomic<double> g_log_base{2.0};

// Lexicographic order on (Re, Im) pairs of the entries.
bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

// Multiply the vector by a phase so its largest-magnitude component is real
// positive. The first index attaining the maximum is used.
void fix_phase(Vector& v) {
  Eigen::Index pivot = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      pivot = i;
    }
  }
  if (best <= 0.0) return;
  v *= std::conj(v[pivot]) / best;
}

}  // namespace

double log_base() { return g_log_base.load(); }

void set_log_base(double base) {
  if (!(base > 1.0)) throw std::invalid_argument("log base must exceed 1");
  g_log_base.store(base);
}

double log_of(double x) { return std::log(x) / std::log(g_log_base.load()); }

double exp_of(double x) { return std::exp(x * std::log(g_log_base.load())); }

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron_power(const Matrix& a, int n) {
  if (n < 1) throw std::invalid_argument("kron_power: n must be >= 1");
  Matrix out = a;
  for (int k = 1; k < n; ++k) out = kron(out, a);
  return out;
}

Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw std::invalid_argument("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix partial_trace_a(const Matrix& x, int d_a, int d_b) {
  if (x.rows() != static_cast<Eigen::Index>(d_a) * d_b || x.rows() != x.cols())
    throw std::invalid_argument("partial_trace_a: dimension mismatch");
  Matrix out = Matrix::Zero(d_b, d_b);
  for (int i = 0; i < d_a; ++i)
    out += x.block(i * d_b, i * d_b, d_b, d_b);
  return out;
}

Matrix partial_trace_b(const Matrix& x, int d_a, int d_b) {
  if (x.rows() != static_cast<Eigen::Index>(d_a) * d_b || x.rows() != x.cols())
    throw std::invalid_argument("partial_trace_b: dimension mismatch");
  Matrix out = Matrix::Zero(d_a, d_a);
  for (int i = 0; i < d_a; ++i)
    for (int j = 0; j < d_a; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < d_b; ++k) s += x(i * d_b + k, j * d_b + k);
      out(i, j) = s;
    }
  return out;
}

HermitianMatrix::HermitianMatrix(Matrix m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("HermitianMatrix: matrix must be square and nonempty");
  const double scale = 1.0 + max_abs(m);
  const double dev = max_abs(m - m.adjoint().eval());
  if (dev > tol::kHermiticity * scale)
    throw std::invalid_argument("HermitianMatrix: input is not Hermitian (max |A - A^dag| = " +
                                std::to_string(dev) + ")");
  m_ = 0.5 * (m + m.adjoint().eval());
}

Matrix Spectral::reconstruct() const {
  Matrix out = Matrix::Zero(dim(), dim());
  for (size_t k = 0; k < projectors.size(); ++k)
    out += eigenvalues[static_cast<Eigen::Index>(k)] * projectors[k];
  return out;
}

Spectral eig_hermitian(const HermitianMatrix& h, Grouping grouping) {
  const int d = h.dim();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");

  std::vector<std::pair<double, Vector>> pairs(d);
  for (int k = 0; k < d; ++k) {
    Vector v = solver.eigenvectors().col(k);
    fix_phase(v);
    pairs[k] = {solver.eigenvalues()[k], std::move(v)};
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return lex_less(a.second, b.second);
  });

  Spectral out;
  out.eigenvalues.resize(d);
  out.basis.resize(d, d);
  for (int k = 0; k < d; ++k) {
    out.eigenvalues[k] = pairs[k].first;
    out.basis.col(k) = pairs[k].second;
  }

  if (grouping == Grouping::none) {
    out.projectors.reserve(d);
    for (int k = 0; k < d; ++k)
      out.projectors.push_back(out.basis.col(k) * out.basis.col(k).adjoint());
    return out;
  }

  const double scale = std::max(std::abs(out.eigenvalues[0]), std::abs(out.eigenvalues[d - 1]));
  const double gap = tol::kDegeneracyGap * std::max(scale, 1e-300);
  RealVector grouped_values(d);
  std::vector<Matrix> grouped_projectors;
  int n_groups = 0;
  int start = 0;
  while (start < d) {
    int stop = start + 1;
    while (stop < d && out.eigenvalues[stop - 1] - out.eigenvalues[stop] <= gap) ++stop;
    Matrix p = Matrix::Zero(d, d);
    double mean = 0.0;
    for (int k = start; k < stop; ++k) {
      p += out.basis.col(k) * out.basis.col(k).adjoint();
      mean += out.eigenvalues[k];
    }
    grouped_values[n_groups++] = mean / (stop - start);
    grouped_projectors.push_back(std::move(p));
    start = stop;
  }
  out.eigenvalues = grouped_values.head(n_groups);
  out.projectors = std::move(grouped_projectors);
  return out;
}

PsdMatrix::PsdMatrix(const HermitianMatrix& h) {
  Spectral s = eig_hermitian(h);
  const int d = h.dim();
  const double lmax = s.eigenvalues[0];
  const double accept = tol::kPsdEig * std::max(lmax, 0.0) + 1e-13 * (1.0 + max_abs(h.matrix()));
  if (s.eigenvalues[d - 1] < -accept)
    throw std::invalid_argument("PsdMatrix: eigenvalue " + std::to_string(s.eigenvalues[d - 1]) +
                                " below PSD tolerance");
  for (int k = 0; k < d; ++k)
    if (s.eigenvalues[k] < 0.0) s.eigenvalues[k] = 0.0;
  m_ = s.reconstruct();
  m_ = 0.5 * (m_ + m_.adjoint().eval());
  spectral_ = std::make_shared<const Spectral>(std::move(s));
}

double PsdMatrix::lambda_max() const { return spectral_->eigenvalues[0]; }

namespace {

// Shared skeleton for the spectral functions: sum f(lambda_k) P_k over the
// support lambda_k > rel_tol * lambda_max.
template <typename F>
Matrix spectral_function(const PsdMatrix& a, F&& f, double rel_tol) {
  const Spectral& s = a.spectral();
  const double cutoff = rel_tol * std::max(s.eigenvalues[0], 0.0);
  Matrix out = Matrix::Zero(a.dim(), a.dim());
  for (int k = 0; k < a.dim(); ++k)
    if (s.eigenvalues[k] > cutoff) out += f(s.eigenvalues[k]) * s.projectors[k];
  return out;
}

}  // namespace

Matrix support_projector(const PsdMatrix& a, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw std::invalid_argument("support_projector: rel_tol must lie in (0, 1)");
  return spectral_function(a, [](double) { return Complex(1.0, 0.0); }, rel_tol);
}

Matrix mat_log_support(const PsdMatrix& a) {
  return spectral_function(a, [](double l) { return Complex(log_of(l), 0.0); }, tol::kSupportCut);
}

Matrix frac_power(const PsdMatrix& a, Complex alpha) {
  return spectral_function(a, [alpha](double l) { return std::exp(alpha * std::log(l)); },
                           tol::kSupportCut);
}

}  // namespace qchain
