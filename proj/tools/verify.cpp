#include <cmath>
#include <iostream>
#include <numbers>

#include "commands.hpp"
#include "roughsew/csv_io.hpp"
#include "roughsew/error.hpp"
#include "roughsew/paths.hpp"
#include "roughsew/shuffle.hpp"
#include "support.hpp"

namespace roughsew::cli {

using nlohmann::json;

namespace {

constexpr double kRoughPathTolerance = 1e-9;
constexpr double kConstantTolerance = 1e-14;

std::string fmt_time(double v) { return format_number(v); }

void verify_rough_path(const RunConfig& config, json& report) {
  const double alpha = required(config.alpha, "--alpha");
  auto in = open_input(config.input);
  const RoughPathGrid x = read_rough_path_csv(in, alpha, config.alphabet_size);
  const DyadicGrid& g = x.grid();
  const double tol = config.tolerance.resolve(kRoughPathTolerance);
  report["tolerances"] = tolerance_json(tol, config.tolerance);
  const HolderReport hr = holder_report(x);
  const double bound = tol * hr.scale;
  auto& checks = report["checks"];

  checks.push_back(make_check("chen.max", hr.chen.value, bound, hr.chen.value <= bound,
                              chen_json(hr.chen, g)));
  checks.push_back(make_check("shuffle.max", hr.shuffle.value, bound, hr.shuffle.value <= bound,
                              shuffle_json(hr.shuffle, g)));
  if (hr.chen.value > bound)
    std::cerr << "chen.max: defect " << hr.chen.value << " on word " << hr.chen.word.to_string()
              << " at (s, u, t) = (" << fmt_time(g.time(hr.chen.s)) << ", "
              << fmt_time(g.time(hr.chen.u)) << ", " << fmt_time(g.time(hr.chen.t)) << ")\n";

  double diag = 0.0;
  std::string diag_word;
  for (std::size_t id = 0; id < x.word_count(); ++id)
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double v = std::abs(x.values(id)(k, k));
      if (v > diag) diag = v, diag_word = x.algebra()->word(id).to_string();
    }
  checks.push_back(make_check("diagonal.max", diag, bound, diag <= bound, {{"word", diag_word}}));

  checks.push_back(make_check("levels.stored", x.stored_level(), x.level(),
                              x.stored_level() >= x.level(),
                              {{"stored_level", x.stored_level()}, {"truncation", x.level()}}));
  for (const WordNorm& n : hr.norms)
    checks.push_back(make_check("holder." + n.word.to_string(), n.norm,
                                std::numeric_limits<double>::infinity(), std::isfinite(n.norm),
                                {{"exponent", n.exponent}}));
  report["scale"] = hr.scale;
  report["grid_level"] = g.level();
}

void verify_sewing(const RunConfig& config, json& report) {
  const double gamma = required(config.gamma, "--gamma");
  auto in = open_input(config.input);
  const Grid2Fn a = read_germ_csv(in);
  const double tol = config.tolerance.resolve(kZeroTolerance);
  report["tolerances"] = tolerance_json(tol, config.tolerance);
  report["gamma"] = gamma;
  report["grid_level"] = a.grid().level();
  auto& checks = report["checks"];
  const double scale = std::max(a.sup_abs(), std::numeric_limits<double>::min());

  std::optional<SewResult> res;
  if (gamma <= 1.0) {
    DyadicSewResult low = sew_low(a, gamma);
    const DyadicGrid& g = a.grid();
    double worst = 0.0;
    for (int n = 1; n <= g.level(); ++n) {
      const std::size_t w = std::size_t{1} << (g.level() - n);
      for (std::size_t k = 0; k < (std::size_t{1} << n); ++k)
        worst = std::max(worst, std::abs(low.remainder(k * w, (k + 1) * w) +
                                         low.corrections[static_cast<std::size_t>(n)][k]));
    }
    checks.push_back(
        make_check("sewing.consecutive", worst, tol * scale, worst <= tol * scale));
    res = std::move(static_cast<SewResult&>(low));
  } else {
    try {
      res = sew_high(a, gamma);
      checks.push_back(make_check("sewing.convergence", 0.0, 0.0, true));
    } catch (const NotConverging& e) {
      checks.push_back(make_check("sewing.convergence", std::numeric_limits<double>::quiet_NaN(),
                                  0.0, false, {{"message", e.what()}}));
      return;
    }
  }

  const Grid1Fn& integral = res->integral;
  const Grid2Fn& remainder = res->remainder;
  const double start = std::abs(integral[0]);
  checks.push_back(make_check("sewing.start", start, 0.0, start == 0.0));
  const double identity = max_abs_triple(delta2(remainder - a));
  checks.push_back(make_check("sewing.identity", identity, tol * scale, identity <= tol * scale));
  const double chain = max_abs_triple(delta2(delta1(integral)));
  const double chain_bound = tol * std::max(1.0, integral.sup_abs());
  checks.push_back(make_check("sewing.chain", chain, chain_bound, chain <= chain_bound));
  const SewingReport rep = make_sewing_report(a, remainder, gamma, {}, tol);
  checks.push_back(make_check("sewing.bound", rep.output_c2_norm,
                              rep.bound_constant * rep.input_c3_norm + tol, rep.bound_satisfied,
                              sewing_report_json(rep)));
}

json constant_row(double gamma) {
  return {{"gamma", gamma}, {"constant", constant_c(gamma, 1.0)}};
}

void verify_sewing_constants(const RunConfig& config, json& report) {
  const double tol = config.tolerance.resolve(kConstantTolerance);
  report["tolerances"] = tolerance_json(tol, config.tolerance);
  auto& checks = report["checks"];
  const auto frozen = [&](const std::string& id, double gamma, double expect) {
    const double v = constant_c(gamma, 1.0);
    const double err = std::abs(v - expect) / expect;
    checks.push_back(make_check(id, v, expect, err <= tol, {{"gamma", gamma}, {"relative_error", err}}));
  };
  frozen("constant.gamma_0.5", 0.5, 197.82337649086287);
  frozen("constant.gamma_1", 1.0, 96.0 / std::numbers::ln2);
  frozen("constant.gamma_2", 2.0, 0.5);

  json table = json::array();
  for (int i = 1; i <= 30; ++i) table.push_back(constant_row(i / 10.0));
  report["table"] = table;

  const int level = config.level.value_or(6);
  const DyadicGrid grid(1.0, level);
  const Grid1Fn g = generate_path({MidpointDisplacementPath{0.5, config.seed}, 1.0, level});
  for (double gamma : {0.3, 0.5, 0.8, 1.3, 2.0}) {
    const Grid2Fn a = generate_germ({PowerGerm{gamma}}, grid) + delta1(g);
    const SewResult res = sew(a, gamma);
    const SewingReport rep = make_sewing_report(a, res.remainder, gamma, {}, kZeroTolerance);
    checks.push_back(make_check("bound.gamma_" + format_number(gamma), rep.output_c2_norm,
                                rep.bound_constant * rep.input_c3_norm, rep.bound_satisfied,
                                sewing_report_json(rep)));
  }
  const Grid2Fn log_germ = generate_germ({LogGerm{}}, grid);
  const double lw = log_weighted_norm(sew_low(log_germ, 1.0).remainder);
  const double log_bound = constant_c(1.0, 1.0) * std::numbers::ln2;
  checks.push_back(make_check("bound.gamma_1.log_germ", lw, log_bound, lw <= log_bound,
                              {{"grid_level", level}}));
}

void verify_algebra(const RunConfig& config, json& report) {
  const int d = config.alphabet_size.value_or(3);
  const ShuffleAlgebra alg(d, config.truncation);
  const int top = alg.truncation();
  report["tolerances"] = {{"relative", 0.0}, {"source", "exact"}};
  report["alphabet_size"] = d;
  report["truncation"] = top;
  auto& checks = report["checks"];

  std::vector<Word> words;
  for (int n = 0; n <= top; ++n)
    for (const Word& w : n == 0 ? std::vector<Word>{Word{}} : alg.words(n)) words.push_back(w);

  long comm = 0, comm_cases = 0, assoc = 0, assoc_cases = 0, compat = 0, compat_cases = 0;
  for (const Word& u : words)
    for (const Word& v : words) {
      if (u.degree() + v.degree() > top) continue;
      ++comm_cases;
      if (shuffle(u, v) != shuffle(v, u)) ++comm;
      if (!u.empty() && !v.empty()) {
        ++compat_cases;
        if (!alg.compatibility_defect(u, v).empty()) ++compat;
      }
      for (const Word& w : words) {
        if (u.degree() + v.degree() + w.degree() > top) continue;
        ++assoc_cases;
        const WordCombination uv{shuffle(u, v)}, vw{shuffle(v, w)};
        if (shuffle(uv, WordCombination{{w, 1}}) != shuffle(WordCombination{{u, 1}}, vw)) ++assoc;
      }
    }
  long coassoc = 0, radford = 0;
  const long nonempty = static_cast<long>(alg.word_count());
  for (std::size_t id = 0; id < alg.word_count(); ++id) {
    const Word& w = alg.word(id);
    if (!alg.coassociativity_defect(w).empty()) ++coassoc;
    const RationalCombination back = alg.expand(alg.radford_decompose(w));
    if (back != RationalCombination{{w, Rational(1)}}) ++radford;
  }
  const auto count_check = [&](const std::string& id, long failures, long cases) {
    checks.push_back(make_check(id, static_cast<double>(failures), 0.0, failures == 0,
                                {{"cases", cases}}));
  };
  count_check("algebra.associativity", assoc, assoc_cases);
  count_check("algebra.coassociativity", coassoc, nonempty);
  count_check("algebra.commutativity", comm, comm_cases);
  count_check("algebra.compatibility", compat, compat_cases);
  count_check("algebra.radford", radford, nonempty);
}

}  // namespace

Outcome run_verify(const RunConfig& config) {
  Outcome outcome;
  json& report = outcome.report;
  report["suite"] = config.name;
  report["checks"] = json::array();
  if (config.name == "rough-path")
    verify_rough_path(config, report);
  else if (config.name == "sewing")
    verify_sewing(config, report);
  else if (config.name == "sewing-constants")
    verify_sewing_constants(config, report);
  else if (config.name == "algebra")
    verify_algebra(config, report);
  else
    throw UsageError("unknown suite '" + config.name + "'");
  outcome.exit_code = finish_checks(report);
  return outcome;
}

}  // namespace roughsew::cli
