#include <cmath>
#include <memory>
#include <numbers>

#include "commands.hpp"
#include "roughsew/csv_io.hpp"
#include "roughsew/paths.hpp"
#include "roughsew/shuffle.hpp"
#include "support.hpp"

namespace roughsew::cli {

using nlohmann::json;

namespace {

// Plain and log-weighted norms of the remainder of the log germ per level.
void demo_log_optimality(const RunConfig& config, json& report, std::ostream* csv) {
  const int lo = config.min_level.value_or(4), hi = config.max_level.value_or(12);
  if (lo < 1 || hi < lo) throw UsageError("need 1 <= --min-level <= --max-level");
  const double bound = constant_c(1.0, 1.0) * std::numbers::ln2;
  report["parameters"] = {{"min_level", lo}, {"max_level", hi}, {"log_weighted_bound", bound}};
  if (csv) *csv << "level,plain_norm,log_weighted_norm,increment\n";
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int m = lo; m <= hi; ++m) {
    const Grid2Fn r = sew_low(generate_germ({LogGerm{}}, DyadicGrid(1.0, m)), 1.0).remainder;
    const double plain = norm_c2(r, 1.0), weighted = log_weighted_norm(r);
    const double inc = plain - previous;
    report["rows"].push_back(
        {{"level", m}, {"plain_norm", plain}, {"log_weighted_norm", weighted}, {"increment", inc}});
    if (csv)
      *csv << m << ',' << format_number(plain) << ',' << format_number(weighted) << ','
           << (m == lo ? std::string() : format_number(inc)) << '\n';
    previous = plain;
  }
}

// Sewn Young integral of t^0.6 against itself versus fine Riemann sums.
void demo_young(const RunConfig& config, json& report, std::ostream* csv) {
  const int lo = config.min_level.value_or(4), hi = config.max_level.value_or(8);
  if (lo < 1 || hi < lo) throw UsageError("need 1 <= --min-level <= --max-level");
  constexpr double kExponent = 0.6, kGamma = 1.2;
  constexpr int kOracleExtra = 4;
  report["parameters"] = {{"min_level", lo},      {"max_level", hi},
                          {"path_exponent", 0.6}, {"gamma", kGamma},
                          {"oracle_extra_levels", kOracleExtra}};
  if (csv) *csv << "level,sewn,oracle,error,bound\n";
  for (int m = lo; m <= hi; ++m) {
    const Grid1Fn x = generate_path({PowerPath{kExponent}, 1.0, m + kOracleExtra});
    const DyadicGrid grid(1.0, m);
    const Grid2Fn a = generate_germ({YoungProductGerm{x, x}}, grid);
    const Grid1Fn sewn = sew_high(a, kGamma).integral;
    // Left-point Riemann sums on the fine grid, read off on the coarse one.
    const std::size_t stride = grid.stride_in(x.grid());
    double running = 0.0, error = 0.0;
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
      if (k % stride == 0) error = std::max(error, std::abs(sewn[k / stride] - running));
      running += x[k] * (x[k + 1] - x[k]);
    }
    error = std::max(error, std::abs(sewn[grid.last()] - running));
    const double bound = 5.0 * std::pow(2.0, -0.2 * m);
    report["rows"].push_back({{"level", m},
                              {"sewn", sewn[grid.last()]},
                              {"oracle", running},
                              {"error", error},
                              {"bound", bound}});
    if (csv)
      *csv << m << ',' << format_number(sewn[grid.last()]) << ',' << format_number(running) << ','
           << format_number(error) << ',' << format_number(bound) << '\n';
  }
}

// Lift of a two-dimensional midpoint-displacement path, then level 3.
void demo_lyons_victoir(const RunConfig& config, json& report, std::ostream* csv) {
  const double alpha = config.alpha.value_or(0.45);
  const int level = config.level.value_or(8);
  const int d = config.alphabet_size.value_or(2);
  const int target = config.target_level.value_or(truncation_level(alpha) + 1);
  report["parameters"] = {{"alpha", alpha}, {"grid_level", level}, {"d", d},
                          {"seed", config.seed}, {"target_level", target}};
  auto algebra = std::make_shared<const ShuffleAlgebra>(d, target);
  const DyadicGrid grid(1.0, level);
  HolderFamily f = HolderFamily::zero(algebra, grid, alpha);
  for (int i = 0; i < d; ++i)
    f.components.at(Word{i + 1}) = generate_path(
        {MidpointDisplacementPath{alpha, config.seed + static_cast<std::uint64_t>(i)}, 1.0, level});
  const RoughPathGrid x = extend(f);
  report["reports"]["extend"] = holder_report_json(holder_report(x), grid);
  const RoughPathGrid y = extend_above_n(x, target);
  report["reports"]["extend_above_n"] = holder_report_json(holder_report(y), grid);
  if (csv) write_rough_path_csv(*csv, y);
}

}  // namespace

Outcome run_demo(const RunConfig& config) {
  Outcome outcome;
  json& report = outcome.report;
  report["demo"] = config.name;
  report["rows"] = json::array();
  report["reports"] = json::object();
  std::optional<std::ofstream> file;
  if (!config.output.empty()) file = open_output(config.output);
  std::ostream* csv = file ? &*file : nullptr;
  if (config.name == "log-optimality")
    demo_log_optimality(config, report, csv);
  else if (config.name == "young")
    demo_young(config, report, csv);
  else if (config.name == "lyons-victoir")
    demo_lyons_victoir(config, report, csv);
  else
    throw UsageError("unknown demo '" + config.name + "'");
  return outcome;
}

}  // namespace roughsew::cli
