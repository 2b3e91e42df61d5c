// CLI entry point: run a named verifier on a random or file-loaded instance,
// batch-audit inequalities over seeded random instances, scan the
// counterexample family into CSV, or check the recovery-map quadrature.
//
// Exit status: 0 when every asserted check passed (conditional-chain rows
// whose trace condition failed do not fail the run), 1 on a genuine
// inequality failure, 2 on input errors.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qchain/audit.hpp"
#include "qchain/counterexample_lab.hpp"
#include "qchain/json_io.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInputError = 2;

struct Options {
  std::string inequality;
  std::uint64_t seed = 0;
  int dim = 3;
  int trials = 100;
  std::optional<double> tol;
  double log_base = 2.0;
  int quad_nodes = 400;
  double quad_cutoff = 12.0;
  std::vector<std::string> inputs;
  std::string out;
  std::string family = "appendixB";
  int n_copies = 4;
};

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty()) {
    std::cout << contents;
    if (!contents.empty() && contents.back() != '\n') std::cout << '\n';
  } else {
    qchain::write_text_file(out_path, contents);
  }
}

// File-loaded instances for the ids whose inputs are states/channels/POVMs;
// the expected --in order is documented per id.
qchain::VerdictReport verify_from_files(const Options& opt,
                                        const qchain::QuadratureScheme& quad) {
  const auto& paths = opt.inputs;
  auto need = [&](size_t n, const char* usage) {
    if (paths.size() != n)
      throw qchain::IoError(paths.empty() ? "<none>" : paths[0],
                            std::string("--in expects ") + usage);
  };
  const std::string& id = opt.inequality;
  if (id == "thm1" || id == "thm1_strong") {
    need(5, "rho, sigma, m, n, g");
    return qchain::verify_thm1(qchain::load_density(paths[0]), qchain::load_density(paths[1]),
                               qchain::load_channel(paths[2]), qchain::load_channel(paths[3]),
                               qchain::load_povm(paths[4]), id == "thm1_strong",
                               qchain::TransposeConvention::eigenbasis,
                               opt.tol.value_or(qchain::verdict_tol::kExact));
  }
  if (id == "has_audit") {
    need(6, "rho, sigma, m, n, g, f");
    return qchain::measured_chain_audit(
        qchain::load_density(paths[0]), qchain::load_density(paths[1]),
        qchain::load_channel(paths[2]), qchain::load_channel(paths[3]),
        qchain::load_povm(paths[4]), qchain::load_povm(paths[5]));
  }
  if (id == "commuting" || id == "difbasis" || id == "pairing_opt" ||
      id == "two_channel_dpi" || id == "conditional_chain") {
    need(4, "rho, sigma, m, n");
    auto rho = qchain::load_density(paths[0]);
    auto sigma = qchain::load_density(paths[1]);
    auto m = qchain::load_channel(paths[2]);
    auto n = qchain::load_channel(paths[3]);
    if (id == "commuting")
      return qchain::verify_commuting(rho, sigma, m, n,
                                      opt.tol.value_or(qchain::verdict_tol::kExact));
    if (id == "difbasis")
      return qchain::verify_difbasis(rho, sigma, m, n, qchain::Pairing::identity(rho.dim()),
                                     opt.tol.value_or(qchain::verdict_tol::kExact));
    if (id == "pairing_opt")
      return qchain::optimize_pairing(rho, sigma, m, n,
                                      opt.tol.value_or(qchain::verdict_tol::kExact))
          .second;
    if (id == "two_channel_dpi")
      return qchain::verify_two_channel_dpi(rho, sigma, m, n, quad,
                                            opt.tol.value_or(qchain::verdict_tol::kQuadrature));
    return qchain::verify_conditional_chain(rho, sigma, m, n, quad,
                                            opt.tol.value_or(qchain::verdict_tol::kQuadrature));
  }
  if (id == "general_entropy") {
    need(5, "rho, sigma, gamma, omega, m");
    return qchain::verify_general_entropy(
        qchain::load_density(paths[0]), qchain::load_density(paths[1]),
        qchain::load_positive(paths[2]), qchain::load_positive(paths[3]),
        qchain::load_channel(paths[4]), quad,
        opt.tol.value_or(qchain::verdict_tol::kQuadrature));
  }
  throw qchain::IoError(paths.empty() ? "<none>" : paths[0],
                        "--in is not supported for inequality '" + id + "'");
}

int run_verify(const Options& opt) {
  const auto quad = qchain::build_quadrature(opt.quad_nodes, opt.quad_cutoff);
  qchain::VerdictReport report =
      opt.inputs.empty()
          ? qchain::run_single(opt.inequality, opt.dim,
                               qchain::derive_seed(opt.seed, 0xA0D17, 0), quad, opt.tol)
          : verify_from_files(opt, quad);
  emit(opt.out, qchain::report_to_json(report).dump(2) + "\n");
  if (report.pass || qchain::condition_failed_row(report)) return kExitPass;
  return kExitFail;
}

int run_audit_command(const Options& opt) {
  qchain::AuditConfig config;
  config.inequality_id = opt.inequality;
  config.seed = opt.seed;
  config.trials = opt.trials;
  config.dim = opt.dim;
  config.tol = opt.tol;
  config.quad_nodes = opt.quad_nodes;
  config.quad_cutoff = opt.quad_cutoff;
  const auto reports = qchain::run_audit(config);
  const auto summary = qchain::summarize(reports);

  nlohmann::ordered_json body;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& r : reports) list.push_back(qchain::report_to_json(r));
  body["reports"] = std::move(list);
  body["summary"] = {{"total", summary.total},
                     {"passed", summary.passed},
                     {"min_slack", qchain::extended_real_to_json(summary.min_slack)}};
  emit(opt.out, body.dump(2) + "\n");

  const int genuine_failures = summary.total - summary.passed - summary.condition_failed;
  return genuine_failures == 0 ? kExitPass : kExitFail;
}

int run_scan(const Options& opt) {
  if (opt.family != "appendixB")
    throw qchain::IoError(opt.family, "unknown scan family (expected appendixB)");
  qchain::ScanGrid grid = qchain::ScanGrid::defaults();
  grid.n_numeric = opt.n_copies;
  const auto rows = qchain::region_scan(grid);
  std::ostringstream csv;
  qchain::write_region_csv(csv, rows);
  emit(opt.out, csv.str());
  return kExitPass;
}

int run_quadcheck(const Options& opt) {
  const auto quad = qchain::build_quadrature(opt.quad_nodes, opt.quad_cutoff);
  const double deviation = std::abs(quad.total_mass() - 1.0);
  nlohmann::ordered_json body = {{"nodes", opt.quad_nodes},
                                 {"cutoff", opt.quad_cutoff},
                                 {"total_mass", quad.total_mass()},
                                 {"mass_deviation", deviation},
                                 {"pass", deviation < 1e-8}};
  emit(opt.out, body.dump(2) + "\n");
  return deviation < 1e-8 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifiers for relative-entropy chain-rule inequalities, recovery-map "
               "certificates, and counterexample region scans"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool with_inequality) {
    if (with_inequality)
      cmd->add_option("--inequality", opt.inequality, "inequality id")->required();
    cmd->add_option("--seed", opt.seed, "master seed for all randomness");
    cmd->add_option("--dim", opt.dim, "Hilbert space dimension (audit: 0 cycles 2..4)");
    cmd->add_option("--tol", opt.tol, "verdict tolerance override");
    cmd->add_option("--log-base", opt.log_base, "logarithm base for all entropies");
    cmd->add_option("--quad-nodes", opt.quad_nodes, "Gauss-Legendre node count");
    cmd->add_option("--quad-cutoff", opt.quad_cutoff, "quadrature truncation half-width");
    cmd->add_option("--out", opt.out, "output file (default: stdout)");
  };

  CLI::App* verify = app.add_subcommand("verify", "run one verifier, emit a JSON report");
  add_common(verify, true);
  verify->add_option("--in", opt.inputs, "input JSON files (see README for per-id order)");

  CLI::App* audit = app.add_subcommand("audit", "batch-verify random instances");
  add_common(audit, true);
  audit->add_option("--trials", opt.trials, "number of random instances");

  CLI::App* scan = app.add_subcommand("scan", "counterexample region scan to CSV");
  scan->add_option("--family", opt.family, "scan family (appendixB)");
  scan->add_option("--n-copies", opt.n_copies, "copies for the numeric bound (1..6)");
  scan->add_option("--log-base", opt.log_base, "logarithm base for all entropies");
  scan->add_option("--out", opt.out, "output file (default: stdout)");

  CLI::App* quadcheck = app.add_subcommand("quadcheck", "quadrature mass diagnostic");
  quadcheck->add_option("--quad-nodes", opt.quad_nodes, "Gauss-Legendre node count");
  quadcheck->add_option("--quad-cutoff", opt.quad_cutoff, "quadrature truncation half-width");
  quadcheck->add_option("--out", opt.out, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    qchain::set_log_base(opt.log_base);
    if (verify->parsed()) return run_verify(opt);
    if (audit->parsed()) return run_audit_command(opt);
    if (scan->parsed()) return run_scan(opt);
    return run_quadcheck(opt);
  } catch (const qchain::IoError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}
