#pragma once

// Seeded random-instance generation and batch audits for the verifiers. All
// randomness of trial i flows from derive_seed(master, stream(id), i), so a
// given (inequality, seed, trials, dim) tuple always reproduces the same
// reports.

#include <optional>
#include <string>
#include <vector>

#include "qchain/inequality_suite.hpp"

namespace qchain {

// Inequality ids accepted by run_verify/run_audit.
std::vector<std::string> known_inequalities();

struct AuditConfig {
  std::string inequality_id;
  std::uint64_t seed = 0;
  int trials = 100;
  // 0 cycles through 2, 3, 4 by trial index; otherwise a fixed dimension.
  int dim = 0;
  std::optional<double> tol;  // per-verifier default when absent
  int quad_nodes = 400;
  double quad_cutoff = 12.0;
};

ProbVec random_prob_vec(int size, std::uint64_t seed);
StochasticMatrix random_stochastic(int rows, int cols, std::uint64_t seed);

// One random instance of the named inequality.
VerdictReport run_single(const std::string& inequality_id, int dim, std::uint64_t seed,
                         const QuadratureScheme& quad, std::optional<double> tol = {});

std::vector<VerdictReport> run_audit(const AuditConfig& config);

struct AuditSummary {
  int total = 0;
  int passed = 0;
  // Minimum over finite slacks of asserted verdicts; +inf when none is finite.
  ExtendedReal min_slack = ExtendedReal::infinity();
  // Conditional-chain reports whose trace condition failed are recorded but
  // do not count as failures.
  int condition_failed = 0;
};

AuditSummary summarize(const std::vector<VerdictReport>& reports);

// True when the report is a conditional-chain row whose trace condition
// failed (nothing was asserted).
bool condition_failed_row(const VerdictReport& report);

}  // namespace qchain
