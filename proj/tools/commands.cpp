#include "commands.hpp"

#include <cmath>
#include <memory>

#include "roughsew/csv_io.hpp"
#include "roughsew/error.hpp"
#include "roughsew/paths.hpp"
#include "roughsew/shuffle.hpp"
#include "support.hpp"

namespace roughsew::cli {

using nlohmann::json;

Outcome run_sew(const RunConfig& config) {
  const double gamma = required(config.gamma, "--gamma");
  if (!(gamma > 0.0)) throw UsageError("--gamma must be positive");
  auto in = open_input(config.input);
  const Grid2Fn a = read_germ_csv(in);
  const int level = config.level.value_or(a.grid().level());

  Grid1Fn integral(a.grid());
  std::optional<Grid2Fn> remainder;
  Grid2Fn input = a;
  if (gamma <= 1.0) {
    DyadicSewResult res = sew_low(a, gamma, a.grid().with_level(level));
    integral = std::move(res.integral);
    remainder = std::move(res.remainder);
  } else {
    if (level > a.grid().level())
      throw LevelMismatch("--level " + std::to_string(level) + " is finer than the input grid");
    RiemannOptions opt;
    opt.output_level = level;
    RiemannSewResult res = sew_high(a, gamma, opt);
    integral = std::move(res.integral);
    remainder = std::move(res.remainder);
    input = a.restricted(level);
  }

  const double tol = config.tolerance.resolve(kZeroTolerance);
  const SewingReport rep = make_sewing_report(input, *remainder, gamma, {}, tol);
  auto out = open_output(config.output);
  write_path_csv(out, integral);

  Outcome outcome;
  outcome.report = sewing_report_json(rep);
  outcome.report["tolerance_source"] = config.tolerance.source();
  outcome.exit_code = rep.bound_satisfied ? kExitPass : kExitInvariant;
  return outcome;
}

namespace {

Grid1Fn rebased(const Grid1Fn& p) {
  Grid1Fn q = p;
  for (std::size_t k = 0; k < q.size(); ++k) q[k] -= p[0];
  return q;
}

Grid1Fn on_level(const Grid1Fn& p, int level, const std::string& what) {
  if (p.grid().level() < level)
    throw LevelMismatch(what + " has level " + std::to_string(p.grid().level()) +
                        ", below the requested level " + std::to_string(level));
  return p.grid().level() == level ? p : p.restricted(level);
}

}  // namespace

Outcome run_extend(const RunConfig& config) {
  const double alpha = required(config.alpha, "--alpha");
  const int n = truncation_level(alpha);
  auto in = open_input(config.input);
  const auto columns = read_paths_csv(in);
  const int d = config.alphabet_size.value_or(static_cast<int>(columns.size()));
  if (d != static_cast<int>(columns.size()))
    throw UsageError("--d " + std::to_string(d) + " but the path file has " +
                     std::to_string(columns.size()) + " value columns");
  const int level = config.level.value_or(columns.front().second.grid().level());
  const int target = config.target_level.value_or(n);
  if (target < n)
    throw UsageError("--target-level must be at least floor(1/alpha) = " + std::to_string(n));

  auto algebra = std::make_shared<const ShuffleAlgebra>(d, std::max(n, target));
  const DyadicGrid grid = columns.front().second.grid().with_level(level);
  HolderFamily f = HolderFamily::zero(algebra, grid, alpha);
  for (int i = 0; i < d; ++i)
    f.components.at(Word{i + 1}) =
        rebased(on_level(columns[static_cast<std::size_t>(i)].second, level, "path column"));

  for (const std::string& item : config.perturb) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--perturb expects h=FILE, got '" + item + "'");
    const Word h = Word::parse(item.substr(0, eq));
    auto it = f.components.find(h);
    if (it == f.components.end())
      throw UsageError("--perturb word " + h.to_string() +
                       " is not a Lyndon word of degree <= " + std::to_string(n));
    auto pin = open_input(item.substr(eq + 1));
    const Grid1Fn p = on_level(read_path_csv(pin), level, "perturbation " + h.to_string());
    if (p.grid().horizon() != grid.horizon())
      throw LevelMismatch("perturbation " + h.to_string() + " has a different horizon");
    it->second += rebased(p);
  }

  RoughPathGrid x = extend(f);
  if (target > n) x = extend_above_n(x, target);
  auto out = open_output(config.output);
  write_rough_path_csv(out, x);

  Outcome outcome;
  if (!config.report.empty()) outcome.report = holder_report_json(holder_report(x), x.grid());
  return outcome;
}

namespace {

PathSpec path_spec(const RunConfig& config, std::uint64_t seed) {
  PathSpec spec{PowerPath{1.0}, config.horizon, config.level.value_or(8)};
  const std::string& kind = config.name;
  if (kind == "midpoint") {
    spec.kind = MidpointDisplacementPath{required(config.alpha, "--alpha"), seed};
  } else if (kind == "power") {
    spec.kind = PowerPath{required(config.alpha, "--alpha")};
  } else if (kind == "weierstrass") {
    spec.kind = WeierstrassPath{required(config.weierstrass_a, "--a"),
                                required(config.weierstrass_b, "--b")};
    spec.declared_alpha = config.alpha;
  } else if (kind == "poly") {
    if (config.poly.empty()) throw UsageError("--coeffs is required for --kind poly");
    spec.kind = SmoothPolyPath{config.poly};
  } else {
    throw UsageError("unknown path kind '" + kind + "'");
  }
  return spec;
}

}  // namespace

Outcome run_gen_path(const RunConfig& config) {
  if (config.columns < 1) throw UsageError("--d must be at least 1");
  std::vector<std::string> names;
  std::vector<Grid1Fn> paths;
  for (int i = 0; i < config.columns; ++i) {
    names.push_back(config.columns == 1 ? "value" : "x" + std::to_string(i + 1));
    paths.push_back(generate_path(path_spec(config, config.seed + static_cast<std::uint64_t>(i))));
  }
  auto out = open_output(config.output);
  write_paths_csv(out, names, paths);
  return {};
}

Outcome run_gen_germ(const RunConfig& config) {
  const DyadicGrid grid(config.horizon, config.level.value_or(6));
  const std::string& kind = config.name;
  GermSpec spec{LogGerm{}};
  if (kind == "log") {
  } else if (kind == "power") {
    spec.kind = PowerGerm{required(config.gamma, "--gamma"), config.coeff.value_or(1.0)};
  } else if (kind == "mixed") {
    // delta g + coeff |t - s|^gamma with g a midpoint-displacement path.
    const double gamma = required(config.gamma, "--gamma");
    const double coeff = config.coeff.value_or(1.0);
    const Grid1Fn g =
        generate_path({MidpointDisplacementPath{0.5, config.seed}, grid.horizon(), grid.level()});
    spec.kind = CustomGerm{[=](double s, double t) {
      const double gap = std::abs(t - s);
      return gap == 0.0 ? 0.0 : coeff * std::pow(gap, gamma);
    }};
    const Grid2Fn a = generate_germ(spec, grid) + generate_germ({CoboundaryGerm{g}}, grid);
    auto out = open_output(config.output);
    write_germ_csv(out, a);
    return {};
  } else if (kind == "coboundary") {
    auto in = open_input(config.path_x);
    spec.kind = CoboundaryGerm{read_path_csv(in)};
  } else if (kind == "young") {
    auto xin = open_input(config.path_x);
    const Grid1Fn x = read_path_csv(xin);
    Grid1Fn y = x;
    if (!config.path_y.empty()) {
      auto yin = open_input(config.path_y);
      y = read_path_csv(yin);
    }
    spec.kind = YoungProductGerm{x, y};
  } else {
    throw UsageError("unknown germ kind '" + kind + "'");
  }
  const Grid2Fn a = generate_germ(spec, grid);
  auto out = open_output(config.output);
  write_germ_csv(out, a);
  return {};
}

}  // namespace roughsew::cli
