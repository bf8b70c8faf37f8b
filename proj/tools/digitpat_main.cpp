// Command-line front end. Subcommands map one-to-one onto the report
// builders in digitpat::reports; this file only parses arguments, picks an
// output format, and writes the result (atomically when --output is given).
//
// Exit codes: 0 success, 2 validation error, 3 budget exceeded,
// 4 internal invariant violation.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "digitpat/reports.hpp"

namespace {

using digitpat::u64;
namespace reports = digitpat::reports;

struct GlobalOpts {
  std::string output;
  std::string format;  // "", "csv", "json", "text"
  unsigned threads = 1;
  u64 budget_mb = 0;
  u64 seed = 0;  // reserved; all commands are deterministic
};

void emit(const GlobalOpts& g, const std::string& content) {
  if (g.output.empty()) {
    std::cout << content;
  } else {
    reports::write_atomic(g.output, content);
  }
}

void require_format(const GlobalOpts& g, std::initializer_list<const char*> allowed) {
  if (g.format.empty()) return;
  for (const char* a : allowed) {
    if (g.format == a) return;
  }
  throw digitpat::validation_error("--format " + g.format +
                                   " not supported by this subcommand");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digit-pattern coverage and subgroup-geometry experiments"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--output", global.output, "write the report to this path (atomic)");
  app.add_option("--format", global.format, "csv|json|text (per-command default)")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--threads", global.threads, "worker threads for sweeps")
      ->check(CLI::Range(1u, 64u));
  app.add_option("--budget-mb", global.budget_mb,
                 "scale memory/work budgets to roughly this many MB");
  app.add_option("--seed", global.seed, "reserved (everything is deterministic)");

  // expand
  auto* cmd_expand = app.add_subcommand("expand", "period digits of m/n in base g");
  reports::ExpandOptions exp_opt;
  unsigned exp_k = 0;
  cmd_expand->add_option("m", exp_opt.m)->required();
  cmd_expand->add_option("n", exp_opt.n)->required();
  cmd_expand->add_option("g", exp_opt.g)->required();
  auto* exp_k_opt = cmd_expand->add_option("--k", exp_k, "also count distinct k-windows");
  cmd_expand->add_flag("--dump-digits", exp_opt.dump_digits, "emit the whole period");

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "per-prime coverage census over [A, B]");
  reports::SweepOptions sweep_opt;
  std::string sweep_c = "5/24", sweep_eps = "0";
  cmd_sweep->add_option("A", sweep_opt.lo)->required();
  cmd_sweep->add_option("B", sweep_opt.hi)->required();
  cmd_sweep->add_option("g", sweep_opt.g)->required();
  cmd_sweep->add_option("--c", sweep_c, "window coefficient, e.g. 5/24 or 41/504");
  cmd_sweep->add_option("--eps", sweep_eps, "coefficient reduction");
  cmd_sweep->add_flag("--all-cosets", sweep_opt.all_cosets);
  cmd_sweep->add_option("--coset-sample", sweep_opt.coset_sample,
                        "cosets per prime when not --all-cosets");

  // order-census
  auto* cmd_census = app.add_subcommand("order-census", "order statistics over primes <= x");
  u64 census_x = 0, census_g = 0;
  cmd_census->add_option("x", census_x)->required();
  cmd_census->add_option("g", census_g)->required();

  // avoid
  auto* cmd_avoid = app.add_subcommand("avoid", "interval-avoidance count and bound ratios");
  reports::AvoidOptions avoid_opt;
  u64 avoid_h = 0;
  double avoid_eps = 0;
  cmd_avoid->add_option("p", avoid_opt.p)->required();
  cmd_avoid->add_option("g", avoid_opt.g)->required();
  auto* avoid_h_opt = cmd_avoid->add_option("--H", avoid_h, "window length");
  auto* avoid_eps_opt = cmd_avoid->add_option("--corollary-eps", avoid_eps,
                                              "use H = ceil(p^(19/24+eps))");
  cmd_avoid->add_option("--coset", avoid_opt.coset);

  // missing-vs-avoid
  auto* cmd_mva = app.add_subcommand(
      "missing-vs-avoid", "missing windows vs avoiding shifts, per coset");
  u64 mva_p = 0, mva_g = 0;
  unsigned mva_k = 0;
  cmd_mva->add_option("p", mva_p)->required();
  cmd_mva->add_option("g", mva_g)->required();
  cmd_mva->add_option("k", mva_k)->required();

  // expsum
  auto* cmd_expsum = app.add_subcommand("expsum", "spectrum moments and oracle check");
  u64 es_p = 0, es_g = 0;
  unsigned es_check = 64;
  cmd_expsum->add_option("p", es_p)->required();
  cmd_expsum->add_option("g", es_g)->required();
  cmd_expsum->add_option("--check", es_check, "lambdas to cross-check directly");

  // qs
  auto* cmd_qs = app.add_subcommand("qs", "s-fold reach counts, unreachable set, inclusion");
  u64 qs_p = 0, qs_g = 0, qs_h = 0;
  unsigned qs_s = 1;
  cmd_qs->add_option("p", qs_p)->required();
  cmd_qs->add_option("g", qs_g)->required();
  cmd_qs->add_option("H", qs_h)->required();
  cmd_qs->add_option("s", qs_s)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const reports::Budget budget = global.budget_mb
                                       ? reports::Budget::from_mb(global.budget_mb)
                                       : reports::Budget{};
    if (cmd_expand->parsed()) {
      require_format(global, {"json", "text"});
      if (exp_k_opt->count() > 0) exp_opt.k = exp_k;
      auto rep = reports::expand_report(exp_opt, budget);
      emit(global, global.format == "json" ? rep.dump(2) + "\n"
                                           : reports::expand_text(rep));
    } else if (cmd_sweep->parsed()) {
      require_format(global, {"csv", "json"});
      sweep_opt.c = reports::parse_rational(sweep_c);
      sweep_opt.eps = reports::parse_rational(sweep_eps);
      sweep_opt.threads = global.threads;
      auto result = reports::run_sweep(sweep_opt, budget);
      emit(global, global.format == "json"
                       ? reports::sweep_json(sweep_opt, result).dump(2) + "\n"
                       : reports::sweep_csv(result));
    } else if (cmd_census->parsed()) {
      require_format(global, {"json"});
      emit(global, reports::order_census_report(census_x, census_g, budget).dump(2) + "\n");
    } else if (cmd_avoid->parsed()) {
      require_format(global, {"json"});
      if (avoid_h_opt->count() > 0) avoid_opt.H = avoid_h;
      if (avoid_eps_opt->count() > 0) avoid_opt.corollary_eps = avoid_eps;
      emit(global, reports::avoid_report(avoid_opt).dump(2) + "\n");
    } else if (cmd_mva->parsed()) {
      require_format(global, {"json"});
      emit(global, reports::missing_vs_avoid_report(mva_p, mva_g, mva_k, budget).dump(2) + "\n");
    } else if (cmd_expsum->parsed()) {
      require_format(global, {"json"});
      emit(global, reports::expsum_report(es_p, es_g, es_check, budget).dump(2) + "\n");
    } else if (cmd_qs->parsed()) {
      require_format(global, {"json"});
      emit(global, reports::qs_report(qs_p, qs_g, qs_h, qs_s, budget).dump(2) + "\n");
    }
  } catch (const digitpat::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const digitpat::budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const digitpat::invariant_error& e) {
    std::cerr << "self-check failed: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
