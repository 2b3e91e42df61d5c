#include "qchain/counterexample_lab.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "qchain/divergences.hpp"

namespace qchain {

namespace {

// Tilted basis vectors |theta+> = (cos(t/2), sin(t/2)), |theta-> = (sin(t/2), -cos(t/2)).
Vector tilted_plus(double theta) {
  Vector v(2);
  v << Complex(std::cos(theta / 2.0), 0.0), Complex(std::sin(theta / 2.0), 0.0);
  return v;
}

Vector tilted_minus(double theta) {
  Vector v(2);
  v << Complex(std::sin(theta / 2.0), 0.0), Complex(-std::cos(theta / 2.0), 0.0);
  return v;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// (1-p)^k p^(n-k) with the 0^0 = 1 convention.
double eigenvalue_weight(double p, int n, int k) {
  return std::pow(1.0 - p, k) * std::pow(p, n - k);
}

}  // namespace

void validate_family_point(const FamilyPoint& pt) {
  if (!(pt.p >= 0.0 && pt.p < 0.5))
    throw std::invalid_argument("FamilyPoint: p must lie in [0, 1/2)");
  if (!(pt.theta > 0.0 && pt.theta < std::numbers::pi))
    throw std::invalid_argument("FamilyPoint: theta must lie in (0, pi)");
  if (!(pt.eps > 0.0 && pt.eps < 1.0))
    throw std::invalid_argument("FamilyPoint: eps must lie in (0, 1)");
}

FamilyInstance family_states(const FamilyPoint& pt) {
  validate_family_point(pt);
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 1.0 - pt.p;
  rho(1, 1) = pt.p;

  const Vector plus = tilted_plus(pt.theta);
  const Vector minus = tilted_minus(pt.theta);
  const Matrix sigma =
      (1.0 - pt.eps) * (plus * plus.adjoint()) + pt.eps * (minus * minus.adjoint());

  // Replacement channel x -> Tr(x) |theta-><theta-|.
  std::vector<Matrix> kraus;
  for (int i = 0; i < 2; ++i) {
    Matrix k = Matrix::Zero(2, 2);
    k.col(i) = minus;
    kraus.push_back(k);
  }
  DensityMatrix sigma_state{sigma};
  Channel n = pinching_channel(sigma_state);
  return FamilyInstance{DensityMatrix(rho), std::move(sigma_state),
                        Channel(std::move(kraus), 2, 2), std::move(n)};
}

double lhs_gap(const FamilyPoint& pt) {
  validate_family_point(pt);
  const double c2 = std::cos(pt.theta / 2.0) * std::cos(pt.theta / 2.0);
  const double s2 = std::sin(pt.theta / 2.0) * std::sin(pt.theta / 2.0);
  return -binary_entropy(pt.p) +
         (log_of(pt.eps) - log_of(1.0 - pt.eps)) * ((1.0 - pt.p) * c2 + pt.p * s2);
}

double rhs_limit(const FamilyPoint& pt) {
  validate_family_point(pt);
  const double c2 = std::cos(pt.theta / 2.0) * std::cos(pt.theta / 2.0);
  const double s2 = std::sin(pt.theta / 2.0) * std::sin(pt.theta / 2.0);
  return (1.0 - pt.p) * log_of(s2) + pt.p * log_of(c2);
}

double rhs_finite_n(const FamilyPoint& pt, int n) {
  validate_family_point(pt);
  if (n < 1 || n > 10) throw std::invalid_argument("rhs_finite_n: n must lie in 1..10");
  const double c2 = std::cos(pt.theta / 2.0) * std::cos(pt.theta / 2.0);
  const double s2 = std::sin(pt.theta / 2.0) * std::sin(pt.theta / 2.0);
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = binomial(n, k) * eigenvalue_weight(pt.p, n, k);
    if (w <= 0.0) continue;
    sum += w * (k * log_of(s2) + (n - k) * log_of(c2));
  }
  return sum / n;
}

double rhs_numeric_n(const FamilyPoint& pt, int n) {
  validate_family_point(pt);
  if (n < 1 || n > 8) throw std::invalid_argument("rhs_numeric_n: n must lie in 1..8");
  const int dim = 1 << n;

  // m^(x)n sends every normalized projector to the pure state
  // |theta->^(x)n; n^(x)n dephases in the product eigenbasis of sigma.
  Matrix basis(2, 2);
  basis.col(0) = tilted_plus(pt.theta);
  basis.col(1) = tilted_minus(pt.theta);
  const Matrix w_basis = kron_power(basis, n);
  const Vector minus_n = kron_power(tilted_minus(pt.theta), n).col(0);
  const DensityMatrix replaced(Matrix(minus_n * minus_n.adjoint()));

  double expectation = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double weight = binomial(n, k) * eigenvalue_weight(pt.p, n, k);
    if (weight <= 0.0) continue;

    // Normalized projector onto computational strings with k zeros.
    Matrix projector = Matrix::Zero(dim, dim);
    for (int x = 0; x < dim; ++x) {
      const int ones = std::popcount(static_cast<unsigned>(x));
      if (n - ones == k) projector(x, x) = 1.0;
    }
    projector /= binomial(n, k);

    const Matrix rotated = w_basis.adjoint() * projector * w_basis;
    const Matrix dephased =
        w_basis * rotated.diagonal().asDiagonal().toDenseMatrix() * w_basis.adjoint();

    const ExtendedReal d = umegaki(replaced, PsdMatrix(dephased));
    if (d.is_pos_inf()) return -std::numeric_limits<double>::infinity();
    expectation += weight * d.value();
  }
  return -expectation / n;
}

double eps_star(double theta, double p) {
  validate_family_point(FamilyPoint{p, theta, 0.5});
  const double c2 = std::cos(theta / 2.0) * std::cos(theta / 2.0);
  const double s2 = std::sin(theta / 2.0) * std::sin(theta / 2.0);
  const double numerator = (1.0 - p) * log_of(s2) + p * log_of(c2) + binary_entropy(p);
  const double denominator = (1.0 - p) * c2 + p * s2;
  const double e = exp_of(numerator / denominator);
  return e / (1.0 + e);
}

ScanGrid ScanGrid::defaults() {
  ScanGrid grid;
  grid.p_values = {0.0, 0.25, 0.49};
  for (int k = 1; k <= 49; ++k) grid.thetas.push_back(k * std::numbers::pi / 50.0);
  for (int k = 1; k <= 49; ++k) grid.epsilons.push_back(k * 0.01);
  grid.n_numeric = 4;
  return grid;
}

std::vector<RegionRow> region_scan(const ScanGrid& grid) {
  if (grid.p_values.empty() || grid.thetas.empty() || grid.epsilons.empty())
    throw std::invalid_argument("region_scan: empty grid");
  if (grid.n_numeric < 1 || grid.n_numeric > 6)
    throw std::invalid_argument("region_scan: n_numeric must lie in 1..6");

  std::vector<RegionRow> rows;
  rows.reserve(grid.p_values.size() * grid.thetas.size() * grid.epsilons.size());
  for (double p : grid.p_values)
    for (double theta : grid.thetas) {
      // The n-copy bound does not depend on eps, so evaluate it once per
      // (p, theta) column.
      const double rhs_numeric =
          rhs_numeric_n(FamilyPoint{p, theta, grid.epsilons.front()}, grid.n_numeric);
      const double boundary = eps_star(theta, p);
      for (double eps : grid.epsilons) {
        const FamilyPoint pt{p, theta, eps};
        RegionRow row;
        row.p = p;
        row.theta = theta;
        row.eps = eps;
        row.lhs_gap = lhs_gap(pt);
        row.rhs_limit = rhs_limit(pt);
        row.eps_star = boundary;
        row.violated_analytic = row.lhs_gap < row.rhs_limit;
        const FamilyInstance inst = family_states(pt);
        const ExtendedReal gap_in = umegaki(inst.rho, inst.sigma);
        const ExtendedReal gap_out = umegaki(DensityMatrix(inst.m.apply(inst.rho.matrix())),
                                             PsdMatrix(inst.n.apply(inst.sigma.matrix())));
        row.violated_numeric = gap_in.value() - gap_out.value() < rhs_numeric;
        row.n_used = grid.n_numeric;
        rows.push_back(row);
      }
    }
  return rows;
}

void write_region_csv(std::ostream& out, const std::vector<RegionRow>& rows) {
  out << "p,theta,eps,lhs_gap,rhs_limit,eps_star,violated_analytic,violated_numeric,n_used\n";
  char buffer[64];
  auto fmt = [&buffer](double v) {
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return std::string(buffer);
  };
  for (const auto& r : rows) {
    out << fmt(r.p) << ',' << fmt(r.theta) << ',' << fmt(r.eps) << ',' << fmt(r.lhs_gap) << ','
        << fmt(r.rhs_limit) << ',' << fmt(r.eps_star) << ',' << (r.violated_analytic ? 1 : 0)
        << ',' << (r.violated_numeric ? 1 : 0) << ',' << r.n_used << '\n';
  }
}

}  // namespace qchain
