#include "qchain/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qchain {

namespace {

constexpr double kSupportLeakTol = 1e-9;

// Conservative absolute-error model for a d-dimensional divergence value:
// a handful of eigendecompositions and traces, each good to machine epsilon
// relative to the value scale. Stays below 1e-9 for d <= 16.
double divergence_err(int dim, double value) {
  return 64.0 * dim * dim * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(value));
}

}  // namespace

double ExtendedReal::value() const {
  if (!is_finite()) throw std::domain_error("ExtendedReal: value() on an infinite value");
  return value_;
}

ExtendedReal ExtendedReal::negated() const {
  if (is_pos_inf()) return neg_infinity();
  if (is_neg_inf()) return infinity();
  return finite(-value_, abs_err_);
}

std::string ExtendedReal::str() const {
  if (is_pos_inf()) return "inf";
  if (is_neg_inf()) return "-inf";
  return std::to_string(value_);
}

ProbVec::ProbVec(RealVector weights, bool normalized)
    : w_(std::move(weights)), normalized_(normalized) {
  if (w_.size() == 0) throw std::invalid_argument("ProbVec: empty weight vector");
  for (Eigen::Index i = 0; i < w_.size(); ++i)
    if (w_[i] < -tol::kProbFloor)
      throw std::invalid_argument("ProbVec: negative weight " + std::to_string(w_[i]));
  w_ = w_.cwiseMax(0.0);
  if (normalized_ && std::abs(w_.sum() - 1.0) > 1e-10)
    throw std::invalid_argument("ProbVec: weights sum to " + std::to_string(w_.sum()));
}

ProbVec ProbVec::point_mass(int size, int index) {
  RealVector w = RealVector::Zero(size);
  w[index] = 1.0;
  return ProbVec(std::move(w));
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
  double s = 0.0;
  if (p > 0.0) s -= p * log_of(p);
  if (p < 1.0) s -= (1.0 - p) * log_of(1.0 - p);
  return s;
}

ProbVec prob_from_povm(const Matrix& x, const Povm& g, bool normalized) {
  if (x.rows() != g.dim() || x.cols() != g.dim())
    throw std::invalid_argument("prob_from_povm: dimension mismatch");
  RealVector w(g.size());
  for (int j = 0; j < g.size(); ++j)
    w[j] = std::max((g.element(j).matrix() * x).trace().real(), 0.0);
  return ProbVec(std::move(w), normalized);
}

ExtendedReal kl(const ProbVec& p, const ProbVec& q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl: length mismatch");
  double sum = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] <= tol::kProbFloor) continue;
    if (q[i] <= tol::kProbFloor) return ExtendedReal::infinity();
    sum += p[i] * log_of(p[i] / q[i]);
  }
  return ExtendedReal::finite(sum, divergence_err(p.size(), sum));
}

ExtendedReal umegaki(const DensityMatrix& rho, const PsdMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("umegaki: dimension mismatch");
  const int d = rho.dim();

  const Matrix supp = support_projector(sigma);
  const double leak = ((Matrix::Identity(d, d) - supp) * rho.matrix()).trace().real();
  if (leak > kSupportLeakTol) return ExtendedReal::infinity();

  const Spectral& s = rho.spectral();
  const double cutoff = tol::kSupportCut * std::max(s.eigenvalues[0], 0.0);
  double tr_rho_log_rho = 0.0;
  for (int k = 0; k < d; ++k)
    if (s.eigenvalues[k] > cutoff) tr_rho_log_rho += s.eigenvalues[k] * log_of(s.eigenvalues[k]);

  const double cross = (rho.matrix() * mat_log_support(sigma)).trace().real();
  const double value = tr_rho_log_rho - cross;
  return ExtendedReal::finite(value, divergence_err(d, value));
}

ExtendedReal umegaki(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return umegaki(rho, sigma.psd());
}

ExtendedReal measured(const DensityMatrix& rho, const PsdMatrix& sigma, const Povm& g) {
  if (rho.dim() != sigma.dim() || rho.dim() != g.dim())
    throw std::invalid_argument("measured: dimension mismatch");
  ProbVec p = prob_from_povm(rho.matrix(), g, /*normalized=*/true);
  ProbVec q = prob_from_povm(sigma.matrix(), g, /*normalized=*/false);
  return kl(p, q);
}

ExtendedReal measured_eigenbasis(const DensityMatrix& rho, const PsdMatrix& x) {
  if (rho.dim() != x.dim())
    throw std::invalid_argument("measured_eigenbasis: dimension mismatch");
  const Spectral& s = rho.spectral();
  std::vector<PsdMatrix> projectors;
  projectors.reserve(s.projectors.size());
  for (const auto& p : s.projectors) projectors.emplace_back(p);
  return measured(rho, x, Povm(std::move(projectors)));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const Matrix product = frac_power(rho.psd(), 0.5) * frac_power(sigma.psd(), 0.5);
  Eigen::JacobiSVD<Matrix> svd(product);
  const double f = svd.singularValues().sum();
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace qchain
