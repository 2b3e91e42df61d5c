#include "qchain/audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace qchain {

namespace {

// Stream tags keep the random objects of different roles decorrelated.
enum Stream : std::uint64_t {
  kRho = 1,
  kSigma = 2,
  kChannelM = 3,
  kChannelN = 4,
  kPovmG = 5,
  kPovmF = 6,
  kGamma = 7,
  kOmega = 8,
  kProbP = 9,
  kProbQ = 10,
  kEnsembleTau = 11,
  kEnsembleMu = 12,
  kPairing = 13,
  kCommonBasis = 14,
  kSpectrumP = 15,
  kSpectrumQ = 16,
  kStochM = 17,
  kStochN = 18,
  kScale = 19,
};

int trial_dim(int dim, std::uint64_t trial) {
  if (dim > 0) return dim;
  return 2 + static_cast<int>(trial % 3);
}

DensityMatrix mk_density(int d, std::uint64_t seed, Stream s, std::uint64_t trial) {
  return random_density(d, d, derive_seed(seed, s, trial));
}

Channel mk_channel(int d, std::uint64_t seed, Stream s, std::uint64_t trial) {
  return random_channel(d, d, d, derive_seed(seed, s, trial));
}

// Commuting pair with aligned (sorted-descending) spectra over a common
// random eigenbasis, so the difbasis verifier with the identity pairing sees
// the same instance.
std::pair<DensityMatrix, DensityMatrix> mk_commuting_pair(int d, std::uint64_t seed,
                                                          std::uint64_t trial) {
  const Matrix u = random_unitary(d, derive_seed(seed, kCommonBasis, trial));
  RealVector p = random_prob_vec(d, derive_seed(seed, kSpectrumP, trial)).weights();
  RealVector q = random_prob_vec(d, derive_seed(seed, kSpectrumQ, trial)).weights();
  std::sort(p.data(), p.data() + p.size(), std::greater<double>());
  std::sort(q.data(), q.data() + q.size(), std::greater<double>());
  Matrix rho = u * p.cast<Complex>().asDiagonal() * u.adjoint();
  Matrix sigma = u * q.cast<Complex>().asDiagonal() * u.adjoint();
  return {DensityMatrix(std::move(rho)), DensityMatrix(std::move(sigma))};
}

PsdMatrix mk_positive(int d, std::uint64_t seed, Stream s, std::uint64_t trial) {
  GaussianStream g(derive_seed(seed, kScale, derive_seed(seed, s, trial)));
  const double scale = 0.5 + 1.5 * g.uniform();
  return PsdMatrix(Matrix(scale * mk_density(d, seed, s, trial).matrix()));
}

Pairing mk_pairing(int d, std::uint64_t seed, std::uint64_t trial) {
  GaussianStream g(derive_seed(seed, kPairing, trial));
  std::vector<int> perm(static_cast<size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = d - 1; i > 0; --i) {
    const int j = static_cast<int>(g.uniform() * (i + 1));
    std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(std::min(j, i))]);
  }
  return Pairing(std::move(perm));
}

}  // namespace

std::vector<std::string> known_inequalities() {
  return {"thm1",           "thm1_strong",    "commuting",       "ensembles",
          "difbasis",       "pairing_opt",    "general_entropy", "two_channel_dpi",
          "conditional_chain", "classical_chain", "has_audit",    "thm1_best_g"};
}

ProbVec random_prob_vec(int size, std::uint64_t seed) {
  GaussianStream g(seed);
  RealVector w(size);
  for (int i = 0; i < size; ++i) {
    double u;
    do {
      u = g.uniform();
    } while (u <= 0.0);
    w[i] = -std::log(u);  // Dirichlet(1, ..., 1) after normalization
  }
  w /= w.sum();
  return ProbVec(std::move(w));
}

StochasticMatrix random_stochastic(int rows, int cols, std::uint64_t seed) {
  RealMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    m.col(j) = random_prob_vec(rows, derive_seed(seed, 0x570C, static_cast<std::uint64_t>(j)))
                   .weights();
  return StochasticMatrix(std::move(m));
}

VerdictReport run_single(const std::string& id, int dim, std::uint64_t seed,
                         const QuadratureScheme& quad, std::optional<double> tol) {
  const int d = dim > 0 ? dim : 3;
  const std::uint64_t trial = 0;
  const double exact = tol.value_or(verdict_tol::kExact);
  const double quadrature = tol.value_or(verdict_tol::kQuadrature);

  if (id == "thm1" || id == "thm1_strong") {
    const auto convention = (seed % 2 == 0) ? TransposeConvention::eigenbasis
                                            : TransposeConvention::canonical;
    return verify_thm1(mk_density(d, seed, kRho, trial), mk_density(d, seed, kSigma, trial),
                       mk_channel(d, seed, kChannelM, trial), mk_channel(d, seed, kChannelN, trial),
                       random_povm(d, d + 1, derive_seed(seed, kPovmG, trial)),
                       id == "thm1_strong", convention, exact);
  }
  if (id == "commuting") {
    auto [rho, sigma] = mk_commuting_pair(d, seed, trial);
    return verify_commuting(rho, sigma, mk_channel(d, seed, kChannelM, trial),
                            mk_channel(d, seed, kChannelN, trial), exact);
  }
  if (id == "ensembles") {
    std::vector<DensityMatrix> taus, mus;
    for (int j = 0; j < d; ++j) {
      taus.push_back(mk_density(d, seed, kEnsembleTau, trial * 97 + static_cast<std::uint64_t>(j)));
      mus.push_back(mk_density(d, seed, kEnsembleMu, trial * 97 + static_cast<std::uint64_t>(j)));
    }
    return verify_ensembles(random_prob_vec(d, derive_seed(seed, kProbP, trial)),
                            random_prob_vec(d, derive_seed(seed, kProbQ, trial)), taus, mus,
                            exact);
  }
  if (id == "difbasis") {
    return verify_difbasis(mk_density(d, seed, kRho, trial), mk_density(d, seed, kSigma, trial),
                           mk_channel(d, seed, kChannelM, trial),
                           mk_channel(d, seed, kChannelN, trial), mk_pairing(d, seed, trial),
                           exact);
  }
  if (id == "pairing_opt") {
    return optimize_pairing(mk_density(d, seed, kRho, trial), mk_density(d, seed, kSigma, trial),
                            mk_channel(d, seed, kChannelM, trial),
                            mk_channel(d, seed, kChannelN, trial), exact)
        .second;
  }
  if (id == "general_entropy") {
    return verify_general_entropy(
        mk_density(d, seed, kRho, trial), mk_density(d, seed, kSigma, trial),
        mk_positive(d, seed, kGamma, trial), mk_positive(d, seed, kOmega, trial),
        mk_channel(d, seed, kChannelM, trial), quad, quadrature);
  }
  if (id == "two_channel_dpi") {
    return verify_two_channel_dpi(mk_density(d, seed, kRho, trial),
                                  mk_density(d, seed, kSigma, trial),
                                  mk_channel(d, seed, kChannelM, trial),
                                  mk_channel(d, seed, kChannelN, trial), quad, quadrature);
  }
  if (id == "conditional_chain") {
    return verify_conditional_chain(mk_density(d, seed, kRho, trial),
                                    mk_density(d, seed, kSigma, trial),
                                    mk_channel(d, seed, kChannelM, trial),
                                    mk_channel(d, seed, kChannelN, trial), quad, quadrature);
  }
  if (id == "classical_chain") {
    return classical_chain(random_prob_vec(d, derive_seed(seed, kProbP, trial)),
                           random_prob_vec(d, derive_seed(seed, kProbQ, trial)),
                           random_stochastic(d, d, derive_seed(seed, kStochM, trial)),
                           random_stochastic(d, d, derive_seed(seed, kStochN, trial)), exact);
  }
  if (id == "has_audit") {
    return measured_chain_audit(mk_density(d, seed, kRho, trial),
                                mk_density(d, seed, kSigma, trial),
                                mk_channel(d, seed, kChannelM, trial),
                                mk_channel(d, seed, kChannelN, trial),
                                random_povm(d, d + 1, derive_seed(seed, kPovmG, trial)),
                                random_povm(d, d + 1, derive_seed(seed, kPovmF, trial)));
  }
  if (id == "thm1_best_g") {
    return verify_thm1_best_g(mk_density(d, seed, kRho, trial),
                              mk_density(d, seed, kSigma, trial),
                              mk_channel(d, seed, kChannelM, trial),
                              mk_channel(d, seed, kChannelN, trial), /*n_restarts=*/16, d + 1,
                              derive_seed(seed, kPovmG, trial), exact);
  }
  throw std::invalid_argument("unknown inequality id: " + id);
}

std::vector<VerdictReport> run_audit(const AuditConfig& config) {
  const QuadratureScheme quad = build_quadrature(config.quad_nodes, config.quad_cutoff);
  std::vector<VerdictReport> reports;
  reports.reserve(static_cast<size_t>(config.trials));
  for (int i = 0; i < config.trials; ++i) {
    const std::uint64_t trial_seed =
        derive_seed(config.seed, 0xA0D17, static_cast<std::uint64_t>(i));
    reports.push_back(run_single(config.inequality_id,
                                 trial_dim(config.dim, static_cast<std::uint64_t>(i)), trial_seed,
                                 quad, config.tol));
  }
  return reports;
}

bool condition_failed_row(const VerdictReport& report) {
  const auto it = report.side_conditions.find("condition_holds");
  return report.inequality_id == "conditional_chain" && it != report.side_conditions.end() &&
         it->second == 0.0;
}

AuditSummary summarize(const std::vector<VerdictReport>& reports) {
  AuditSummary s;
  s.total = static_cast<int>(reports.size());
  bool have_finite = false;
  double min_slack = 0.0;
  for (const auto& r : reports) {
    if (r.pass) ++s.passed;
    if (condition_failed_row(r)) ++s.condition_failed;
    if (r.slack.is_finite() && !condition_failed_row(r)) {
      if (!have_finite || r.slack.value() < min_slack) min_slack = r.slack.value();
      have_finite = true;
    }
  }
  if (have_finite) s.min_slack = ExtendedReal::finite(min_slack);
  return s;
}

}  // namespace qchain
