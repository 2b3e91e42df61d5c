#pragma once

// One verifier per inequality, each returning a VerdictReport. Slack is
// always stored as lhs - rhs with pass = (slack >= -tol), vacuous when the
// leading divergence is +infinity. Quadrature-free verifiers default to
// tol = 1e-8, verifiers that go through the averaged recovery map to 1e-6.

#include <utility>
#include <vector>

#include "qchain/partitions.hpp"
#include "qchain/recovery.hpp"

namespace qchain {

namespace verdict_tol {
inline constexpr double kExact = 1e-8;       // linear-algebra-limited checks
inline constexpr double kQuadrature = 1e-6;  // checks through the averaged map
}  // namespace verdict_tol

class Pairing {
 public:
  explicit Pairing(std::vector<int> perm);
  static Pairing identity(int n);

  int size() const { return static_cast<int>(perm_.size()); }
  int operator[](int j) const { return perm_[static_cast<size_t>(j)]; }
  const std::vector<int>& permutation() const { return perm_; }

 private:
  std::vector<int> perm_;
};

// Chain rule via ensemble partitions:
//   D(rho||sigma) - D(m(rho)||n(sigma)) >= -E_{P_rho^G} D(m(rho_j)||n(sigma_j)).
// strengthened swaps D(rho||sigma) for D_G(rho||sigma) on the lhs.
VerdictReport verify_thm1(const DensityMatrix& rho, const DensityMatrix& sigma, const Channel& m,
                          const Channel& n, const Povm& g, bool strengthened,
                          TransposeConvention convention = TransposeConvention::eigenbasis,
                          double tol = verdict_tol::kExact);

// Commuting-input chain rule over a common eigenbasis:
//   D(rho||sigma) - D(m(rho)||n(sigma)) >= -E_p D(m(Pi_j)||n(Pi_j)).
VerdictReport verify_commuting(const DensityMatrix& rho, const DensityMatrix& sigma,
                               const Channel& m, const Channel& n,
                               double tol = verdict_tol::kExact);

// Ensemble form: D(p||q) - D(sum p_j tau_j || sum q_j mu_j) >= -sum p_j D(tau_j||mu_j).
VerdictReport verify_ensembles(const ProbVec& p, const ProbVec& q,
                               const std::vector<DensityMatrix>& taus,
                               const std::vector<DensityMatrix>& mus,
                               double tol = verdict_tol::kExact);

// Semiclassical form on sorted eigenvalue distributions with an explicit
// pairing pi of the eigenprojectors:
//   D(p||q o pi) - D(m(rho)||n(sigma)) >= -E_p D(m(Pi_j)||n(Pi~_{pi(j)})).
VerdictReport verify_difbasis(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const Channel& m, const Channel& n, const Pairing& pairing,
                              double tol = verdict_tol::kExact);

// Exact minimizer of sum_j p_j D(m(Pi_j)||n(Pi~_{pi(j)})) over all pairings,
// solved as a linear assignment problem (infinite costs allowed; a finite
// matching is preferred whenever one exists). Returns the optimal pairing and
// the verify_difbasis report under it.
std::pair<Pairing, VerdictReport> optimize_pairing(const DensityMatrix& rho,
                                                   const DensityMatrix& sigma, const Channel& m,
                                                   const Channel& n,
                                                   double tol = verdict_tol::kExact);

// General entropy inequality of the twisted recovery map:
//   D(rho||sigma) - D(m(rho)||gamma) + D(m(rho)||omega)
//     >= D_Pi(rho || Rbar_{gamma,sigma,m}(omega)).
VerdictReport verify_general_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     const PsdMatrix& gamma, const PsdMatrix& omega,
                                     const Channel& m, const QuadratureScheme& q,
                                     double tol = verdict_tol::kQuadrature);

// Two-channel strengthened DPI (gamma = n(sigma), omega = m(rho)):
//   D(rho||sigma) - D(m(rho)||n(sigma)) >= D_Pi(rho || Rbar_{n(sigma),sigma,m}(m(rho))).
VerdictReport verify_two_channel_dpi(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     const Channel& m, const Channel& n,
                                     const QuadratureScheme& q,
                                     double tol = verdict_tol::kQuadrature);

// Conditional chain rule. side_conditions carries
//   T = Tr[Pi_rho Rbar_{n(sigma),sigma,m}(n(rho))]  and  condition_holds.
// When T <= 1 + 1e-8 the verdict asserts
//   D(rho||sigma) - D(m(rho)||n(sigma)) >= -E_p D(m(Pi_j)||n(Pi_j))
// together with the intermediate form (rhs -D(m(rho)||n(rho)), reported in
// side_conditions). When T > 1 nothing is asserted: pass is false, and both
// sides are still evaluated as diagnostics.
VerdictReport verify_conditional_chain(const DensityMatrix& rho, const DensityMatrix& sigma,
                                       const Channel& m, const Channel& n,
                                       const QuadratureScheme& q,
                                       double tol = verdict_tol::kQuadrature);

// Classical chain rule D(p||q) - D(Mp||Nq) >= -E_p D(M delta_j || N delta_j).
VerdictReport classical_chain(const ProbVec& p, const ProbVec& q, const StochasticMatrix& m,
                              const StochasticMatrix& n, double tol = verdict_tol::kExact);

// The exponential identity behind the classical chain rule:
//   E_{Mp} exp(-log(M_ij p_j / N_ij q_j) + log(p~_i / q~_i)) = 1
// on strictly positive instances (zero-weight terms contribute nothing).
double classical_identity_audit(const ProbVec& p, const ProbVec& q, const StochasticMatrix& m,
                                const StochasticMatrix& n);

// Random-restart heuristic over POVMs for the thm1 bound: keeps the G with
// the largest rhs (smallest slack) among n_restarts random draws. No
// optimality claim; the best-found G is reported through side_conditions.
VerdictReport verify_thm1_best_g(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 const Channel& m, const Channel& n, int n_restarts,
                                 int n_outcomes, std::uint64_t seed,
                                 double tol = verdict_tol::kExact);

// Minimal-cost perfect matching on a square cost matrix (O(n^3) augmenting
// potentials). Entries may be +infinity; a finite matching is returned
// whenever one exists.
std::vector<int> solve_assignment(const RealMatrix& cost);

}  // namespace qchain
