#include "qchain/partitions.hpp"

#include <cmath>
#include <stdexcept>

namespace qchain {

const char* convention_name(TransposeConvention c) {
  return c == TransposeConvention::eigenbasis ? "eigenbasis_transpose" : "canonical_transpose";
}

EnsemblePartition ensemble_partition(const DensityMatrix& tau, const Povm& g,
                                     TransposeConvention convention) {
  if (tau.dim() != g.dim())
    throw std::invalid_argument("ensemble_partition: dimension mismatch");
  const int d = tau.dim();
  const Matrix sqrt_tau = frac_power(tau.psd(), 0.5);
  const Matrix& basis = tau.spectral().basis;

  RealVector weights(g.size());
  std::vector<DensityMatrix> states;
  std::vector<bool> zero_weight(static_cast<size_t>(g.size()), false);
  states.reserve(static_cast<size_t>(g.size()));
  const Matrix placeholder = Matrix::Identity(d, d) / static_cast<double>(d);

  for (int j = 0; j < g.size(); ++j) {
    const Matrix& gj = g.element(j).matrix();
    weights[j] = std::max((gj * tau.matrix()).trace().real(), 0.0);
    if (weights[j] <= tol::kProbFloor) {
      zero_weight[static_cast<size_t>(j)] = true;
      states.emplace_back(placeholder);
      continue;
    }
    Matrix unnormalized;
    if (convention == TransposeConvention::eigenbasis) {
      const Matrix transposed = basis * (basis.adjoint() * gj * basis).transpose() * basis.adjoint();
      unnormalized = sqrt_tau * transposed * sqrt_tau;
    } else {
      unnormalized = (sqrt_tau * gj * sqrt_tau).transpose();
    }
    states.emplace_back(Matrix(unnormalized / weights[j]));
  }
  return EnsemblePartition{ProbVec(std::move(weights), /*normalized=*/true), std::move(states),
                           std::move(zero_weight), convention};
}

StochasticMatrix::StochasticMatrix(RealMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.cols() == 0)
    throw std::invalid_argument("StochasticMatrix: empty matrix");
  for (Eigen::Index j = 0; j < m_.cols(); ++j) {
    if (m_.col(j).minCoeff() < -tol::kProbFloor)
      throw std::invalid_argument("StochasticMatrix: negative entry in column " +
                                  std::to_string(j));
    if (std::abs(m_.col(j).sum() - 1.0) > 1e-10)
      throw std::invalid_argument("StochasticMatrix: column " + std::to_string(j) +
                                  " sums to " + std::to_string(m_.col(j).sum()));
  }
  m_ = m_.cwiseMax(0.0);
}

ProbVec StochasticMatrix::column(int j) const { return ProbVec(m_.col(j)); }

ProbVec StochasticMatrix::apply(const ProbVec& p) const {
  if (p.size() != cols()) throw std::invalid_argument("StochasticMatrix::apply: size mismatch");
  return ProbVec(m_ * p.weights(), p.normalized());
}

StochasticMatrix induced_stochastic(const DensityMatrix& tau, const Channel& c, const Povm& g,
                                    const Povm& f) {
  if (g.dim() != c.d_in() || f.dim() != c.d_out() || tau.dim() != c.d_in())
    throw std::invalid_argument("induced_stochastic: dimension mismatch");
  EnsemblePartition part = ensemble_partition(tau, g, TransposeConvention::eigenbasis);
  RealMatrix m(f.size(), g.size());
  for (int j = 0; j < g.size(); ++j) {
    if (part.zero_weight[static_cast<size_t>(j)]) {
      m.col(j).setConstant(1.0 / f.size());
      continue;
    }
    const Matrix out = c.apply(part.states[static_cast<size_t>(j)].matrix());
    ProbVec col = prob_from_povm(out, f, /*normalized=*/false);
    m.col(j) = col.weights() / col.weights().sum();
  }
  return StochasticMatrix(std::move(m));
}

VerdictReport measured_chain_audit(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   const Channel& m, const Channel& n, const Povm& g,
                                   const Povm& f) {
  if (rho.dim() != sigma.dim() || rho.dim() != g.dim() || m.d_in() != rho.dim() ||
      n.d_in() != rho.dim() || f.dim() != m.d_out() || m.d_out() != n.d_out())
    throw std::invalid_argument("measured_chain_audit: dimension mismatch");

  const EnsemblePartition rho_part = ensemble_partition(rho, g, TransposeConvention::eigenbasis);
  const EnsemblePartition sigma_part =
      ensemble_partition(sigma, g, TransposeConvention::eigenbasis);

  const ExtendedReal d_in = measured(rho, sigma.psd(), g);
  const ExtendedReal d_out =
      measured(DensityMatrix(m.apply(rho.matrix())), PsdMatrix(n.apply(sigma.matrix())), f);

  double expectation = 0.0;
  double err = 0.0;
  bool expectation_infinite = false;
  for (int j = 0; j < g.size(); ++j) {
    const double w = rho_part.weights[j];
    if (w <= tol::kProbFloor) continue;
    if (sigma_part.zero_weight[static_cast<size_t>(j)]) {
      expectation_infinite = true;
      break;
    }
    const ExtendedReal term = measured(
        DensityMatrix(m.apply(rho_part.states[static_cast<size_t>(j)].matrix())),
        PsdMatrix(n.apply(sigma_part.states[static_cast<size_t>(j)].matrix())), f);
    if (term.is_pos_inf()) {
      expectation_infinite = true;
      break;
    }
    expectation += w * term.value();
    err += w * term.abs_err();
  }

  ExtendedReal lhs;
  if (d_in.is_pos_inf()) {
    lhs = ExtendedReal::infinity();
  } else if (d_out.is_pos_inf()) {
    lhs = ExtendedReal::neg_infinity();
  } else {
    lhs = ExtendedReal::finite(d_in.value() - d_out.value(), d_in.abs_err() + d_out.abs_err());
  }
  const ExtendedReal rhs = expectation_infinite
                               ? ExtendedReal::neg_infinity()
                               : ExtendedReal::finite(-expectation, err);

  InstanceDigest digest;
  digest.add("has_audit").add(rho.matrix()).add(sigma.matrix());
  for (const auto& k : m.kraus()) digest.add(k);
  for (const auto& k : n.kraus()) digest.add(k);
  for (const auto& e : g.elements()) digest.add(e.matrix());
  for (const auto& e : f.elements()) digest.add(e.matrix());

  return make_verdict("has_audit", lhs, rhs, 1e-8, digest.hex(),
                      "eigenbasis_transpose partitions of rho and sigma; audit stored as "
                      "D_G - D_F >= -E[D_F branch terms]");
}

}  // namespace qchain
