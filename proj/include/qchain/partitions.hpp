#pragma once

// POVM-induced ensemble partitions tau_j = sqrt(tau) G_j^T sqrt(tau) / Tr[G_j tau]
// in both transpose conventions, the stochastic matrices a POVM pair induces
// through a channel, and the finite measured chain-rule audit they satisfy.

#include <vector>

#include "qchain/verdict.hpp"

namespace qchain {

// Where the transpose in the partition formula is taken: in a diagonal basis
// of tau (the deterministic eigenbasis), or in the canonical basis.
enum class TransposeConvention { eigenbasis, canonical };

const char* convention_name(TransposeConvention c);

struct EnsemblePartition {
  ProbVec weights;                   // Tr[G_j tau]
  std::vector<DensityMatrix> states; // unit trace wherever weight > floor
  std::vector<bool> zero_weight;     // flagged outcomes hold an I/d placeholder
  TransposeConvention convention;
};

EnsemblePartition ensemble_partition(const DensityMatrix& tau, const Povm& g,
                                     TransposeConvention convention);

class StochasticMatrix {
 public:
  // Column-stochastic: entry (i, j) is the transition probability j -> i.
  explicit StochasticMatrix(RealMatrix m);

  int rows() const { return static_cast<int>(m_.rows()); }
  int cols() const { return static_cast<int>(m_.cols()); }
  const RealMatrix& matrix() const { return m_; }
  ProbVec column(int j) const;
  ProbVec apply(const ProbVec& p) const;

 private:
  RealMatrix m_;
};

// Column j is the outcome distribution of f on c(tau_j), with tau_j from the
// eigenbasis-transpose partition of tau under g (so that the induced matrix
// maps the g-distribution of tau to the f-distribution of c(tau)).
// Zero-weight columns are uniform placeholders.
StochasticMatrix induced_stochastic(const DensityMatrix& tau, const Channel& c, const Povm& g,
                                    const Povm& f);

// Audit of the finite measured chain rule
//   D_F(m(rho) || n(sigma)) - D_G(rho || sigma) <= E_{P_rho^G} D_F(m(rho_j) || n(sigma_j)),
// stored sign-arranged so that pass = (slack >= -tol):
//   lhs = D_G(rho || sigma) - D_F(m(rho) || n(sigma)),  rhs = -E[...].
VerdictReport measured_chain_audit(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   const Channel& m, const Channel& n, const Povm& g,
                                   const Povm& f);

}  // namespace qchain
