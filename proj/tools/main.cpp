#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ewopt/errors.hpp"

namespace {

using ewopt::cli::RunConfig;

void add_output(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--output,-o", cfg.output, "Report path, '-' for stdout");
  sub->add_flag("--serial", cfg.serial, "Run the serial reference path");
}

void add_map(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--t", cfg.t, "Map parameter t")->required();
  sub->add_option("--pi", cfg.pi, "Permutation, e.g. 2,3,1 (default: the n-cycle)");
  sub->add_option("--n", cfg.n, "Dimension when --pi is omitted (2..4)");
}

void add_search(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Base seed");
  sub->add_option("--restarts", cfg.restarts, "Random restarts of the product-state search");
  sub->add_option("--iters", cfg.iters, "Iterations per restart");
}

void write_report(const RunConfig& cfg, const std::string& text) {
  if (cfg.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw ewopt::InvalidArgument("cannot open output file " + cfg.output);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positivity, decomposability and optimality checks for D-type maps"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* build = app.add_subcommand("build-witness", "Choi matrix of the map");
  add_map(build, cfg);
  build->add_option("--subtraction", cfg.subtraction_file, "JSON matrix C subtracted as C X C^dag");
  add_output(build, cfg);

  auto* positivity = app.add_subcommand("check-positivity", "Closed form and numeric block positivity");
  add_map(positivity, cfg);
  positivity->add_option("--c", cfg.c, "Subtract diag(c, -c, 0, ...) X diag(c, -c, 0, ...)");
  positivity->add_option("--subtraction", cfg.subtraction_file, "JSON matrix C to subtract");
  add_search(positivity, cfg);
  add_output(positivity, cfg);

  auto* cp = app.add_subcommand("check-cp", "Complete positivity via the Choi spectrum");
  add_map(cp, cfg);
  add_output(cp, cfg);

  auto* optimality = app.add_subcommand("check-optimality", "Optimality verdict (n = 3)");
  add_map(optimality, cfg);
  add_output(optimality, cfg);

  auto* decompose = app.add_subcommand("decompose", "Positive plus PPT split for transpositions");
  add_map(decompose, cfg);
  add_output(decompose, cfg);

  auto* sweep = app.add_subcommand("certificate-sweep", "Contractivity of the local coefficient matrices");
  sweep->add_option("--t", cfg.t, "Map parameter, 0 < t < 1")->required();
  sweep->add_option("--c", cfg.c, "Certificate scale (default sqrt(1 - t))");
  sweep->add_option("--samples", cfg.samples, "Random unit vectors (default 10000)");
  sweep->add_option("--seed", cfg.seed, "Base seed");
  add_output(sweep, cfg);

  auto* lemma = app.add_subcommand("verify-lemma24", "Constrained inequality, stationarity and quartic checks");
  lemma->add_option("--t", cfg.t, "Parameter, 0 < t < 1")->required();
  lemma->add_option("--samples", cfg.samples, "Constraint-surface samples (default 100000)");
  lemma->add_option("--seed", cfg.seed, "Base seed");
  add_output(lemma, cfg);

  auto* subcases = app.add_subcommand("verify-subcases", "Per-subcase c^2 bounds against 1 - t");
  subcases->add_option("--t", cfg.t, "Parameter, 0 < t < 1")->required();
  subcases->add_option("--samples", cfg.samples, "Samples per subcase (default 10000)");
  subcases->add_option("--seed", cfg.seed, "Base seed");
  add_output(subcases, cfg);

  auto* locus = app.add_subcommand("zero-locus", "Span of product vectors annihilating the witness");
  add_map(locus, cfg);
  locus->add_option("--samples", cfg.samples, "Descent samples (default 2000)");
  add_search(locus, cfg);
  add_output(locus, cfg);

  auto* detect = app.add_subcommand("detect", "Tr(W rho) for a state");
  add_map(detect, cfg);
  detect->add_option("--rho", cfg.rho_file, "JSON matrix file with the state");
  detect->add_option("--state", cfg.state, "Built-in state: min-eigenvector, maximally-entangled, maximally-mixed")
      ->check(CLI::IsMember({"min-eigenvector", "maximally-entangled", "maximally-mixed"}));
  add_output(detect, cfg);

  auto* probe = app.add_subcommand("probe-subtraction", "Search for a positive subtraction C");
  add_map(probe, cfg);
  probe->add_option("--trials", cfg.trials, "Random directions on top of the structured family (default 200)");
  probe->add_option("--min-scale", cfg.min_scale, "Smallest ||C||_F that counts as a subtraction (default 0.3)");
  add_search(probe, cfg);
  add_output(probe, cfg);

  auto* conjecture = app.add_subcommand("conjecture-probe", "Numeric suite over t and permutation cycle types");
  conjecture->add_option("--n", cfg.n, "Dimension (2..4)");
  conjecture->add_option("--grid", cfg.grid, "Comma-separated t values (default 0.5,1)");
  conjecture->add_option("--trials", cfg.trials, "Random probe directions per point (default 8)");
  conjecture->add_option("--min-scale", cfg.min_scale, "Smallest ||C||_F that counts as a subtraction (default 0.3)");
  conjecture->add_flag("--all-permutations", cfg.all_permutations,
                       "Visit every permutation instead of one per cycle type");
  add_search(conjecture, cfg);
  add_output(conjecture, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ewopt::cli::kExitPass : ewopt::cli::kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const auto result = ewopt::cli::run(cfg);
    write_report(cfg, result.report.dump(2) + "\n");
    return result.exit_code;
  } catch (const ewopt::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ewopt::cli::kExitInternal;
  } catch (const ewopt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ewopt::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return ewopt::cli::kExitInternal;
  }
}
