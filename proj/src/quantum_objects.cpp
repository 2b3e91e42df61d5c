#include "qchain/quantum_objects.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qchain {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kPovmSumTol = 1e-10;
constexpr double kTracePreserveTol = 1e-9;
constexpr double kChoiPsdTol = 1e-9;

}  // namespace

DensityMatrix::DensityMatrix(PsdMatrix base) : base_(std::move(base)) {
  const double tr = base_.trace();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw std::invalid_argument("DensityMatrix: trace = " + std::to_string(tr) +
                                " is not 1 within tolerance");
}

Povm::Povm(std::vector<PsdMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("Povm: element list is empty");
  const int d = elements_[0].dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.dim() != d) throw std::invalid_argument("Povm: mixed element dimensions");
    sum += e.matrix();
  }
  const double dev = max_abs(sum - Matrix::Identity(d, d));
  if (dev > kPovmSumTol)
    throw std::invalid_argument("Povm: elements sum to identity only within " +
                                std::to_string(dev));
}

Matrix KrausMap::apply(const Matrix& x) const {
  if (x.rows() != d_in || x.cols() != d_in)
    throw std::invalid_argument("KrausMap::apply: operand dimension mismatch");
  Matrix out = Matrix::Zero(d_out, d_out);
  for (const auto& k : kraus) out += k * x * k.adjoint();
  return out;
}

Matrix KrausMap::choi() const {
  // C = sum_k w_k w_k^dag with w_k the row-major vectorization of K_k,
  // i.e. w_k[(i, b)] = K_k(b, i) on C^{d_in} (x) C^{d_out}.
  Matrix choi = Matrix::Zero(static_cast<Eigen::Index>(d_in) * d_out,
                             static_cast<Eigen::Index>(d_in) * d_out);
  for (const auto& k : kraus) {
    Vector w(static_cast<Eigen::Index>(d_in) * d_out);
    for (int i = 0; i < d_in; ++i)
      for (int b = 0; b < d_out; ++b) w[static_cast<Eigen::Index>(i) * d_out + b] = k(b, i);
    choi += w * w.adjoint();
  }
  return choi;
}

Channel::Channel(std::vector<Matrix> kraus, int d_in, int d_out) {
  if (kraus.empty()) throw std::invalid_argument("Channel: empty Kraus family");
  if (d_in <= 0 || d_out <= 0) throw std::invalid_argument("Channel: invalid dimensions");
  for (const auto& k : kraus)
    if (k.rows() != d_out || k.cols() != d_in)
      throw std::invalid_argument("Channel: Kraus operator shape mismatch");
  map_ = KrausMap{std::move(kraus), d_in, d_out};

  Matrix tp = Matrix::Zero(d_in, d_in);
  for (const auto& k : map_.kraus) tp += k.adjoint() * k;
  const double tp_dev = max_abs(tp - Matrix::Identity(d_in, d_in));
  if (tp_dev > kTracePreserveTol)
    throw std::invalid_argument("Channel: sum K^dag K deviates from identity by " +
                                std::to_string(tp_dev));

  Eigen::SelfAdjointEigenSolver<Matrix> solver(map_.choi());
  if (solver.eigenvalues().minCoeff() < -kChoiPsdTol)
    throw std::invalid_argument("Channel: Choi operator has eigenvalue " +
                                std::to_string(solver.eigenvalues().minCoeff()));
}

KrausMap Channel::adjoint() const {
  KrausMap adj;
  adj.d_in = d_out();
  adj.d_out = d_in();
  adj.kraus.reserve(kraus().size());
  for (const auto& k : kraus()) adj.kraus.push_back(k.adjoint());
  return adj;
}

Channel Channel::identity(int dim) {
  return Channel({Matrix::Identity(dim, dim)}, dim, dim);
}

Matrix apply_channel(const Channel& c, const Matrix& x) { return c.apply(x); }

KrausMap adjoint_channel(const Channel& c) { return c.adjoint(); }

Channel pinching_channel(const DensityMatrix& sigma) {
  Spectral grouped = eig_hermitian(HermitianMatrix(sigma.matrix()), Grouping::degenerate);
  return Channel(std::move(grouped.projectors), sigma.dim(), sigma.dim());
}

Channel cq_channel(const Povm& projectors, const std::vector<DensityMatrix>& outputs) {
  const int n = projectors.size();
  if (static_cast<int>(outputs.size()) != n)
    throw std::invalid_argument("cq_channel: projector/output count mismatch");
  const int d_in = projectors.dim();
  const int d_out = outputs[0].dim();

  // Validate rank-one orthogonal projectors resolving the identity (the Povm
  // constructor already checked the sum).
  std::vector<Vector> basis;
  basis.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Spectral& s = projectors.element(i).spectral();
    if (std::abs(s.eigenvalues[0] - 1.0) > 1e-9 ||
        (projectors.element(i).dim() > 1 && s.eigenvalues[1] > 1e-9))
      throw std::invalid_argument("cq_channel: element " + std::to_string(i) +
                                  " is not a rank-one projector");
    basis.push_back(s.basis.col(0));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(basis[i].dot(basis[j])) > 1e-9)
        throw std::invalid_argument("cq_channel: projectors are not orthogonal");

  std::vector<Matrix> kraus;
  for (int i = 0; i < n; ++i) {
    const Spectral& out = outputs[static_cast<size_t>(i)].spectral();
    for (int m = 0; m < d_out; ++m) {
      if (out.eigenvalues[m] <= tol::kSupportCut * std::max(out.eigenvalues[0], 0.0)) continue;
      kraus.push_back(std::sqrt(out.eigenvalues[m]) * out.basis.col(m) * basis[i].adjoint());
    }
  }
  return Channel(std::move(kraus), d_in, d_out);
}

BipartiteState bipartite_omega(const DensityMatrix& tau, const Channel& c,
                               OmegaConvention convention) {
  const int d = tau.dim();
  if (c.d_in() != d)
    throw std::invalid_argument("bipartite_omega: channel input dimension mismatch");
  const int d_out = c.d_out();

  Matrix omega(d * d_out, d * d_out);
  if (convention == OmegaConvention::purification) {
    // |tau>> = sum_k sqrt(tau_k) |tau_k, tau_k> in tau's eigenbasis, then the
    // channel acts on the second factor.
    const Spectral& s = tau.spectral();
    Vector purification = Vector::Zero(static_cast<Eigen::Index>(d) * d);
    for (int k = 0; k < d; ++k) {
      if (s.eigenvalues[k] <= 0.0) continue;
      const double w = std::sqrt(s.eigenvalues[k]);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          purification[static_cast<Eigen::Index>(a) * d + b] +=
              w * s.basis(a, k) * s.basis(b, k);
    }
    Matrix pure = purification * purification.adjoint();
    omega.setZero();
    // Apply id (x) c blockwise: block (a, a') of the output is c(block(a, a')).
    for (int a = 0; a < d; ++a)
      for (int ap = 0; ap < d; ++ap) {
        Matrix block = pure.block(a * d, ap * d, d, d);
        Matrix mapped = Matrix::Zero(d_out, d_out);
        for (const auto& k : c.kraus()) mapped += k * block * k.adjoint();
        omega.block(a * d_out, ap * d_out, d_out, d_out) = mapped;
      }
  } else {
    // d |Phi+><Phi+| = sum_kl |k><l| (x) |k><l| in the canonical basis.
    Matrix sqrt_tau = frac_power(tau.psd(), 0.5);
    omega.setZero();
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        Matrix e = Matrix::Zero(d, d);
        e(k, l) = 1.0;
        Matrix mapped = Matrix::Zero(d_out, d_out);
        for (const auto& kr : c.kraus()) mapped += kr * e * kr.adjoint();
        Matrix a_side = sqrt_tau.col(k) * sqrt_tau.row(l);
        omega += kron(a_side, mapped);
      }
  }

  omega = 0.5 * (omega + omega.adjoint().eval());
  const double tr = omega.trace().real();
  if (std::abs(tr - 1.0) > 1e-9)
    throw std::runtime_error("bipartite_omega: state trace deviates from 1 by " +
                             std::to_string(std::abs(tr - 1.0)));
  return BipartiteState{DensityMatrix(omega / tr), d, d_out, convention};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter) {
  auto mix = [](std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  };
  return mix(master ^ mix(stream ^ mix(counter)));
}

std::uint64_t GaussianStream::next_raw() { return engine_(); }

double GaussianStream::uniform() {
  return static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
}

double GaussianStream::real() {
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex GaussianStream::complex_unit_variance() {
  return {real() * std::numbers::sqrt2 / 2.0, real() * std::numbers::sqrt2 / 2.0};
}

Matrix GaussianStream::complex_matrix(int rows, int cols) {
  Matrix out(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) out(i, j) = complex_unit_variance();
  return out;
}

DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim)
    throw std::invalid_argument("random_density: need 1 <= rank <= dim");
  GaussianStream g(seed);
  Matrix ginibre = g.complex_matrix(dim, rank);
  Matrix m = ginibre * ginibre.adjoint();
  return DensityMatrix(m / m.trace().real());
}

Povm random_povm(int dim, int n_outcomes, std::uint64_t seed) {
  if (dim < 1 || n_outcomes < 1)
    throw std::invalid_argument("random_povm: need dim >= 1 and n_outcomes >= 1");
  GaussianStream g(seed);
  std::vector<Matrix> raw;
  Matrix sum = Matrix::Zero(dim, dim);
  for (int j = 0; j < n_outcomes; ++j) {
    Matrix a = g.complex_matrix(dim, dim);
    raw.push_back(a * a.adjoint());
    sum += raw.back();
  }
  Matrix norm = frac_power(PsdMatrix(sum), -0.5);
  std::vector<PsdMatrix> elements;
  elements.reserve(raw.size());
  for (const auto& a : raw) elements.emplace_back(Matrix(norm * a * norm));
  return Povm(std::move(elements));
}

namespace {

// Thin QR with the R diagonal rotated to be real positive, so the isometry is
// a deterministic function of the input matrix.
Matrix thin_isometry(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
  Matrix r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

}  // namespace

Channel random_channel(int d_in, int d_out, int n_kraus, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1 || n_kraus < 1)
    throw std::invalid_argument("random_channel: invalid shape parameters");
  if (static_cast<long>(d_out) * n_kraus < d_in)
    throw std::invalid_argument("random_channel: d_out * n_kraus must be >= d_in");
  GaussianStream g(seed);
  Matrix isometry = thin_isometry(g.complex_matrix(d_out * n_kraus, d_in));
  std::vector<Matrix> kraus;
  kraus.reserve(n_kraus);
  for (int i = 0; i < n_kraus; ++i) kraus.push_back(isometry.middleRows(i * d_out, d_out));
  return Channel(std::move(kraus), d_in, d_out);
}

Matrix random_unitary(int dim, std::uint64_t seed) {
  GaussianStream g(seed);
  return thin_isometry(g.complex_matrix(dim, dim));
}

}  // namespace qchain
