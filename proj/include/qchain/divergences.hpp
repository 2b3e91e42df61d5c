#pragma once

// Classical KL divergence, Umegaki relative entropy, measured relative
// entropy for a fixed POVM (and for the eigenbasis of the first argument),
// and fidelity. All divergences are extended-real valued: support violations
// return +infinity instead of throwing, and second arguments are allowed to
// be unnormalized positive operators.

#include <string>

#include "qchain/quantum_objects.hpp"

namespace qchain {

// Finite value with a conservative absolute-error estimate, or +/-infinity.
// Divergences only ever produce finite or +infinity; -infinity appears in
// derived quantities (negated expectations, slacks).
class ExtendedReal {
 public:
  static ExtendedReal finite(double value, double abs_err = 0.0) {
    ExtendedReal r;
    r.kind_ = Kind::finite;
    r.value_ = value;
    r.abs_err_ = abs_err;
    return r;
  }
  static ExtendedReal infinity() {
    ExtendedReal r;
    r.kind_ = Kind::pos_inf;
    return r;
  }
  static ExtendedReal neg_infinity() {
    ExtendedReal r;
    r.kind_ = Kind::neg_inf;
    return r;
  }

  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
  bool is_neg_inf() const { return kind_ == Kind::neg_inf; }
  double value() const;
  double abs_err() const { return abs_err_; }

  ExtendedReal negated() const;
  std::string str() const;  // "inf" / "-inf" / decimal

 private:
  enum class Kind { finite, pos_inf, neg_inf };
  Kind kind_ = Kind::finite;
  double value_ = 0.0;
  double abs_err_ = 0.0;
};

class ProbVec {
 public:
  // normalized = true additionally checks sum = 1 within 1e-10; the
  // unnormalized variant backs measured divergences against positive
  // operators.
  explicit ProbVec(RealVector weights, bool normalized = true);

  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const { return w_[i]; }
  const RealVector& weights() const { return w_; }
  bool normalized() const { return normalized_; }

  static ProbVec point_mass(int size, int index);

 private:
  RealVector w_;
  bool normalized_;
};

double binary_entropy(double p);  // in the global log base

// Outcome weights Tr[G_j x] of measuring the POVM on a positive operator.
ProbVec prob_from_povm(const Matrix& x, const Povm& g, bool normalized);

// sum_{p_x > floor} p_x log(p_x / q_x); +infinity when p places weight where
// q has none.
ExtendedReal kl(const ProbVec& p, const ProbVec& q);

// Tr[rho (log rho - log sigma)] with support logs; +infinity when rho leaks
// out of the support of sigma. sigma may be unnormalized positive.
ExtendedReal umegaki(const DensityMatrix& rho, const PsdMatrix& sigma);
ExtendedReal umegaki(const DensityMatrix& rho, const DensityMatrix& sigma);

// KL divergence of the outcome distributions of g on rho and sigma.
ExtendedReal measured(const DensityMatrix& rho, const PsdMatrix& sigma, const Povm& g);

// Measured divergence with g = the rank-one eigenprojectors of rho
// (deterministic tie-breaking fixes the basis for degenerate rho).
ExtendedReal measured_eigenbasis(const DensityMatrix& rho, const PsdMatrix& x);

// Trace norm of sqrt(rho) sqrt(sigma), in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qchain
