// Command-line front end: field, sum, classify, eta, figure1, verify.

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "sparsechar/sparsechar.hpp"

namespace sc = sparsechar;

namespace {

struct Common {
  std::string field = "p=2,r=4";
  std::string out;
  unsigned threads = sc::default_threads();
};

void add_common(CLI::App* cmd, Common& c, bool with_field) {
  if (with_field) cmd->add_option("--field", c.field, "field spec, e.g. p=2,m=1,r=8");
  cmd->add_option("--out", c.out, "output file (default: stdout)");
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

// Writes to --out if given, otherwise to stdout.
template <class Fn>
int with_output(const Common& c, Fn&& fn) {
  if (c.out.empty()) return fn(std::cout);
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw sc::DomainError("cannot open output file " + c.out);
  const int rc = fn(file);
  file.flush();
  if (!file) throw sc::DomainError("write failed for " + c.out);
  return rc;
}

std::optional<std::uint64_t> parse_k(const std::string& s) {
  if (s.empty() || s == "-") return std::nullopt;
  std::uint64_t k = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw sc::ParseError("k must be an integer or -", 1, 1);
  return k;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse character sums over finite fields"};
  app.require_subcommand(1);
  Common common;

  auto* field_cmd = app.add_subcommand("field", "print field parameters as JSON");
  add_common(field_cmd, common, true);

  sc::SumConfig sum_cfg;
  std::string k_text = "-";
  std::string domain_text = "sparse:all";
  auto* sum_cmd = app.add_subcommand("sum", "evaluate mixed character sums as CSV");
  add_common(sum_cmd, common, true);
  sum_cmd->add_option("--f1", sum_cfg.f1, "argument of the multiplicative character");
  sum_cmd->add_option("--f2", sum_cfg.f2, "argument of the additive character");
  sum_cmd->add_option("--k", k_text, "multiplicative character index, or - for none");
  sum_cmd->add_option("--zeta", sum_cfg.zeta, "additive character parameter (element code)");
  sum_cmd->add_option("--domain", domain_text, "sparse:<s>|sparse:all|subspace:<k>|subspace:all|full");

  std::string classify_f;
  std::string classify_mode = "auto";
  auto* classify_cmd = app.add_subcommand("classify", "decide membership in the difference-form class");
  add_common(classify_cmd, common, true);
  classify_cmd->add_option("--f", classify_f, "rational function, e.g. (x^2)/(x^2+x+1)")->required();
  classify_cmd->add_option("--mode", classify_mode, "auto|shortcut|exhaustive|oracle");

  std::vector<double> eta_rho;
  std::string eta_grid;
  double eta_tol = 1e-5;
  auto* eta_cmd = app.add_subcommand("eta", "optimal exponent as CSV");
  add_common(eta_cmd, common, false);
  auto* rho_opt = eta_cmd->add_option("--rho", eta_rho, "density values in (0, 1/2]");
  auto* grid_opt = eta_cmd->add_option("--grid", eta_grid, "a:b:n");
  rho_opt->excludes(grid_opt);
  eta_cmd->add_option("--tol", eta_tol, "optimizer tolerance")->check(CLI::PositiveNumber);

  std::string fig_grid = "0.01:0.5:50";
  auto* fig_cmd = app.add_subcommand("figure1", "entropy versus exponent curve as CSV");
  add_common(fig_cmd, common, false);
  fig_cmd->add_option("--grid", fig_grid, "a:b:n");

  std::string suite = "small";
  auto* verify_cmd = app.add_subcommand("verify", "run the self-verification suite");
  add_common(verify_cmd, common, false);
  verify_cmd->add_option("--suite", suite, "small|full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? sc::kExitOk : sc::kExitUsage;
  }

  try {
    if (*field_cmd) {
      const auto f = sc::parse_field(common.field);
      return with_output(common, [&](std::ostream& os) { return sc::cmd_field(*f, os); });
    }
    if (*sum_cmd) {
      const auto f = sc::parse_field(common.field);
      sum_cfg.k = parse_k(k_text);
      sum_cfg.domains = sc::parse_domain(domain_text, f->r());
      sum_cfg.threads = common.threads;
      return with_output(common, [&](std::ostream& os) { return sc::cmd_sum(*f, sum_cfg, os); });
    }
    if (*classify_cmd) {
      const auto f = sc::parse_field(common.field);
      const auto mode = sc::parse_classify_mode(classify_mode);
      return with_output(common,
                         [&](std::ostream& os) { return sc::cmd_classify(*f, classify_f, mode, os, common.threads); });
    }
    if (*eta_cmd) {
      std::vector<double> rhos = eta_grid.empty() ? eta_rho : sc::parse_grid(eta_grid);
      if (rhos.empty()) throw sc::ParseError("eta needs --rho or --grid", 1, 1);
      return with_output(common, [&](std::ostream& os) { return sc::cmd_eta(rhos, eta_tol, os, common.threads); });
    }
    if (*fig_cmd) {
      const auto grid = sc::parse_grid(fig_grid);
      return with_output(common, [&](std::ostream& os) { return sc::cmd_figure1(grid, os, common.threads); });
    }
    if (*verify_cmd) {
      const auto s = sc::parse_suite(suite);
      return with_output(common, [&](std::ostream& os) { return sc::cmd_verify(s, os, {}, common.threads); });
    }
  } catch (const sc::GuardViolation& e) {
    std::cerr << "guard violation (" << e.parameter() << "): " << e.what() << "\n";
    return sc::kExitGuard;
  } catch (const sc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return sc::kExitUsage;
  } catch (const sc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sc::kExitUsage;
  }
  return sc::kExitUsage;
}
