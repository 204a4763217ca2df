#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "roughsew/error.hpp"
#include "support.hpp"

using namespace roughsew;
using namespace roughsew::cli;

namespace {

void add_tolerance(CLI::App* sub, RunConfig& config) {
  sub->add_option("--tolerance", config.tolerance.flag,
                  std::string("relative tolerance; defaults to $") + kToleranceEnv +
                      " or the module default")
      ->check(CLI::PositiveNumber);
}

void emit(const nlohmann::json& report, const std::string& path) {
  if (report.is_null()) return;
  const std::string text = report.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    std::ofstream out = open_output(path);
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sewing maps and rough paths on dyadic grids"};
  app.require_subcommand(1);
  RunConfig config;

  CLI::App* sew = app.add_subcommand("sew", "integrate a germ with the sewing map");
  sew->add_option("--input", config.input, "germ CSV (s,t,value)")->required();
  sew->add_option("--gamma", config.gamma, "coherence exponent")->required();
  sew->add_option("--level", config.level, "output grid level");
  sew->add_option("--output", config.output, "integral CSV (t,value)")->required();
  sew->add_option("--report", config.report, "report JSON (stdout when omitted)");
  add_tolerance(sew, config);

  CLI::App* ext = app.add_subcommand("extend", "lift a Hoelder path to a rough path");
  ext->add_option("--path", config.input, "path CSV with one column per letter")->required();
  ext->add_option("--alpha", config.alpha, "Hoelder exponent in (0, 1)")->required();
  ext->add_option("--level", config.level, "grid level (defaults to the file's)");
  ext->add_option("--d", config.alphabet_size, "alphabet size (defaults to the column count)");
  ext->add_option("--perturb", config.perturb, "h=FILE: add the path in FILE to f^h");
  ext->add_option("--target-level", config.target_level, "extend above floor(1/alpha)");
  ext->add_option("--output", config.output, "rough path CSV (s,t,word,value)")->required();
  ext->add_option("--report", config.report, "Hoelder report JSON");

  CLI::App* ver = app.add_subcommand("verify", "check invariants");
  config.name = "rough-path";
  ver->add_option("--suite", config.name, "rough-path, sewing, sewing-constants or algebra")
      ->check(CLI::IsMember({"rough-path", "sewing", "sewing-constants", "algebra"}));
  ver->add_option("--input", config.input, "rough path CSV or germ CSV");
  ver->add_option("--alpha", config.alpha, "Hoelder exponent of the rough path");
  ver->add_option("--gamma", config.gamma, "exponent for the sewing suite");
  ver->add_option("--d", config.alphabet_size, "alphabet size");
  ver->add_option("--truncation", config.truncation, "degree bound for the algebra suite");
  ver->add_option("--level", config.level, "grid level for the sewing-constants suite");
  ver->add_option("--seed", config.seed, "seed for the sewing-constants germs");
  ver->add_option("--report", config.report, "report JSON (stdout when omitted)");
  add_tolerance(ver, config);

  CLI::App* demo = app.add_subcommand("demo", "run an experiment and write its table");
  demo->add_option("name", config.name, "log-optimality, young or lyons-victoir")
      ->required()
      ->check(CLI::IsMember({"log-optimality", "young", "lyons-victoir"}));
  demo->add_option("--min-level", config.min_level, "smallest grid level");
  demo->add_option("--max-level", config.max_level, "largest grid level");
  demo->add_option("--level", config.level, "grid level (lyons-victoir)");
  demo->add_option("--alpha", config.alpha, "Hoelder exponent (lyons-victoir)");
  demo->add_option("--d", config.alphabet_size, "alphabet size (lyons-victoir)");
  demo->add_option("--seed", config.seed, "first path seed (lyons-victoir)");
  demo->add_option("--target-level", config.target_level, "extension level (lyons-victoir)");
  demo->add_option("--output", config.output, "CSV table");
  demo->add_option("--report", config.report, "report JSON (stdout when omitted)");

  CLI::App* gp = app.add_subcommand("gen-path", "write a synthetic path");
  gp->add_option("--kind", config.name, "midpoint, power, weierstrass or poly")
      ->required()
      ->check(CLI::IsMember({"midpoint", "power", "weierstrass", "poly"}));
  gp->add_option("--alpha", config.alpha, "Hoelder exponent");
  gp->add_option("--seed", config.seed, "seed of the first column");
  gp->add_option("--level", config.level, "grid level");
  gp->add_option("--horizon", config.horizon, "time horizon T")->check(CLI::PositiveNumber);
  gp->add_option("--d", config.columns, "number of columns (seeds seed, seed+1, ...)");
  gp->add_option("--a", config.weierstrass_a, "Weierstrass amplitude ratio");
  gp->add_option("--b", config.weierstrass_b, "Weierstrass frequency ratio");
  gp->add_option("--coeffs", config.poly, "polynomial coefficients c0 c1 ...");
  gp->add_option("--out,--output", config.output, "path CSV")->required();

  CLI::App* gg = app.add_subcommand("gen-germ", "write a synthetic germ");
  gg->add_option("--kind", config.name, "log, power, mixed, coboundary or young")
      ->required()
      ->check(CLI::IsMember({"log", "power", "mixed", "coboundary", "young"}));
  gg->add_option("--gamma", config.gamma, "exponent of power and mixed germs");
  gg->add_option("--coeff", config.coeff, "coefficient of power and mixed germs");
  gg->add_option("--seed", config.seed, "seed of the mixed germ's path");
  gg->add_option("--level", config.level, "grid level");
  gg->add_option("--horizon", config.horizon, "time horizon T")->check(CLI::PositiveNumber);
  gg->add_option("--path,--x", config.path_x, "path CSV (coboundary, young integrand X)");
  gg->add_option("--y", config.path_y, "path CSV for the young integrand Y (defaults to X)");
  gg->add_option("--out,--output", config.output, "germ CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    config.tolerance.env = tolerance_from_env();
    Outcome outcome;
    if (sew->parsed()) {
      outcome = run_sew(config);
    } else if (ext->parsed()) {
      outcome = run_extend(config);
    } else if (ver->parsed()) {
      outcome = run_verify(config);
    } else if (demo->parsed()) {
      outcome = run_demo(config);
    } else if (gp->parsed()) {
      outcome = run_gen_path(config);
    } else if (gg->parsed()) {
      outcome = run_gen_germ(config);
    }
    emit(outcome.report, config.report);
    if (outcome.exit_code == kExitInvariant) std::cerr << "invariant check failed\n";
    return outcome.exit_code;
  } catch (const NotConverging& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const NonConvergent& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
