#pragma once

// The two-parameter qubit family on which the unconditional projective chain
// rule fails: rho diagonal with weight p, sigma a tilted basis mixed with
// eps, m the replacement channel onto the tilted minus state, n the pinching
// onto sigma's eigenbasis. Closed forms for both sides of the regularized
// bound, the honest n-copy matrix evaluation, the analytic violation
// boundary eps*, and grid scans with CSV output.

#include <iosfwd>
#include <vector>

#include "qchain/quantum_objects.hpp"

namespace qchain {

struct FamilyPoint {
  double p = 0.0;      // in [0, 1/2)
  double theta = 0.0;  // in (0, pi)
  double eps = 0.0;    // in (0, 1)
};

void validate_family_point(const FamilyPoint& pt);

struct FamilyInstance {
  DensityMatrix rho;
  DensityMatrix sigma;
  Channel m;
  Channel n;
};

FamilyInstance family_states(const FamilyPoint& pt);

// Closed form of D(rho||sigma) - D(m(rho)||n(sigma)):
//   -S(p) + [log eps - log(1-eps)] [(1-p) cos^2(theta/2) + p sin^2(theta/2)].
double lhs_gap(const FamilyPoint& pt);

// Limit of the regularized projector bound:
//   (1-p) log sin^2(theta/2) + p log cos^2(theta/2).
double rhs_limit(const FamilyPoint& pt);

// Finite-n binomial form (1/n) sum_k C(n,k)(1-p)^k p^(n-k)
// log(sin^{2k} cos^{2(n-k)}); equals rhs_limit exactly for every n.
double rhs_finite_n(const FamilyPoint& pt, int n);

// Builds the n-copy eigenprojectors of rho^(x)n, pushes them through the
// tensor powers of m and n, and evaluates the bound from the actual
// matrices. Requires n <= 8 (dimension 2^n) and eps != 1/2 (nondegenerate
// sigma).
double rhs_numeric_n(const FamilyPoint& pt, int n);

// Analytic violation boundary: the bound fails iff eps < eps_star(theta, p).
double eps_star(double theta, double p);

struct RegionRow {
  double p = 0.0;
  double theta = 0.0;
  double eps = 0.0;
  double lhs_gap = 0.0;
  double rhs_limit = 0.0;
  double eps_star = 0.0;
  bool violated_analytic = false;
  bool violated_numeric = false;
  int n_used = 0;
};

struct ScanGrid {
  std::vector<double> p_values;
  std::vector<double> thetas;
  std::vector<double> epsilons;
  int n_numeric = 4;

  // theta = k pi/50 (k = 1..49), eps = 0.01..0.49 step 0.01,
  // p in {0, 0.25, 0.49}, n_numeric = 4.
  static ScanGrid defaults();
};

// One row per grid point in (p, theta, eps) lexicographic order.
// violated_analytic compares the closed forms; violated_numeric compares the
// matrix-built gap against rhs_numeric_n.
std::vector<RegionRow> region_scan(const ScanGrid& grid);

// CSV with header p,theta,eps,lhs_gap,rhs_limit,eps_star,violated_analytic,
// violated_numeric,n_used; floats at 12 significant digits, booleans 0/1,
// LF line endings.
void write_region_csv(std::ostream& out, const std::vector<RegionRow>& rows);

}  // namespace qchain
