#pragma once

// Twisted recovery maps R^alpha_{gamma,sigma,m}(X) = sigma^a m^dag(gamma^-a X gamma^-a*) sigma^a*
// with alpha = (1 - i t)/2, their beta_0-weighted average (numerically, a
// Gauss-Legendre sum over a truncated symmetric interval), and the trace
// condition Tr[Pi_rho Rbar(omega)] <= 1. gamma = m(sigma), t = 0 reduces to
// the Petz recovery map.

#include "qchain/quantum_objects.hpp"

namespace qchain {

// Dense matrix acting on column-vectorized operators.
struct Superoperator {
  int d_in = 0;   // operand-side Hilbert space dimension
  int d_out = 0;  // result-side Hilbert space dimension
  Matrix matrix;  // (d_out^2) x (d_in^2)

  Matrix apply(const Matrix& x) const;
  Matrix choi() const;  // sum_ij |i><j| (x) S(|i><j|)
};

// X -> a X b as a superoperator.
Superoperator sandwich_superoperator(const Matrix& a, const Matrix& b);
Superoperator kraus_superoperator(const KrausMap& map);

// beta_0(t) = (pi/2) / (cosh(pi t) + 1); integrates to 1 over the real line.
double beta0(double t);

// Gauss-Legendre nodes and weights on [a, b] (Newton iteration on Legendre
// polynomials; fully deterministic).
void gauss_legendre(int n, double a, double b, RealVector& nodes, RealVector& weights);

struct QuadratureScheme {
  RealVector nodes;    // t_k on [-cutoff, cutoff]
  RealVector weights;  // Gauss-Legendre weights already multiplied by beta_0(t_k)
  double cutoff = 0.0;

  double total_mass() const { return weights.sum(); }
};

// Defaults (400 nodes, cutoff 12) put the truncation error of the beta_0
// integral below 1e-15 and the quadrature error well below 1e-8.
QuadratureScheme build_quadrature(int n_nodes = 400, double cutoff = 12.0);

Superoperator twisted_map(const PsdMatrix& gamma, const DensityMatrix& sigma, const Channel& m,
                          double t);

Superoperator averaged_map(const PsdMatrix& gamma, const DensityMatrix& sigma, const Channel& m,
                           const QuadratureScheme& q);

// Action of the averaged map on one operand, summed node by node (identical
// to averaged_map(...).apply(x) up to floating-point association).
Matrix averaged_apply(const PsdMatrix& gamma, const DensityMatrix& sigma, const Channel& m,
                      const QuadratureScheme& q, const Matrix& x);

struct TraceCondition {
  double value = 0.0;  // T = Tr[Pi_rho Rbar_{gamma,sigma,m}(omega)]
  bool holds = false;  // T <= 1 + 1e-8
};

TraceCondition trace_condition(const DensityMatrix& rho, const PsdMatrix& gamma,
                               const DensityMatrix& sigma, const Channel& m,
                               const PsdMatrix& omega, const QuadratureScheme& q);

}  // namespace qchain
