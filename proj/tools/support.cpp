#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string_view>

#include "roughsew/random.hpp"

namespace roughsew::cli {

using nlohmann::json;

double Tolerance::resolve(double module_default) const {
  if (flag) return *flag;
  if (env) return *env;
  return module_default;
}

std::string Tolerance::source() const {
  if (flag) return "flag";
  if (env) return "env";
  return "default";
}

std::optional<double> tolerance_from_env() {
  const char* raw = std::getenv(kToleranceEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (*end != '\0' || !std::isfinite(v) || v <= 0.0)
    throw UsageError(std::string(kToleranceEnv) + " must be a positive number, got '" + raw + "'");
  return v;
}

std::ifstream open_input(const std::string& path) {
  if (path.empty()) throw UsageError("no input file given");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path + " for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  if (path.empty()) throw UsageError("no output file given");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  return out;
}

json make_check(const std::string& id, double measured, double bound, bool passed, json detail) {
  return {{"id", id}, {"measured", measured}, {"bound", bound}, {"passed", passed}, {"detail", detail}};
}

int finish_checks(json& report) {
  auto& checks = report["checks"];
  std::sort(checks.begin(), checks.end(),
            [](const json& a, const json& b) { return a["id"] < b["id"]; });
  bool ok = true;
  for (const json& c : checks) ok = ok && c["passed"].get<bool>();
  report["passed"] = ok;
  return ok ? kExitPass : kExitInvariant;
}

json tolerance_json(double value, const Tolerance& tolerance) {
  return {{"relative", value}, {"source", tolerance.source()}};
}

json sewing_report_json(const SewingReport& r) {
  return {{"gamma", r.gamma},
          {"input_c3_norm", r.input_c3_norm},
          {"output_c2_norm", r.output_c2_norm},
          {"bound_constant", r.bound_constant},
          {"bound_satisfied", r.bound_satisfied},
          {"grid_level", r.grid_level},
          {"tolerance", r.tolerance}};
}

json chen_json(const ChenDefectMax& c, const DyadicGrid& g) {
  return {{"value", c.value},         {"word", c.word.to_string()},
          {"s", g.time(c.s)},         {"u", g.time(c.u)},
          {"t", g.time(c.t)},         {"indices", {c.s, c.u, c.t}}};
}

json shuffle_json(const ShuffleDefectMax& c, const DyadicGrid& g) {
  return {{"value", c.value}, {"left", c.left.to_string()}, {"right", c.right.to_string()},
          {"s", g.time(c.s)}, {"t", g.time(c.t)},           {"indices", {c.s, c.t}}};
}

json holder_report_json(const HolderReport& r, const DyadicGrid& g) {
  json norms = json::array();
  for (const WordNorm& n : r.norms)
    norms.push_back({{"word", n.word.to_string()}, {"exponent", n.exponent}, {"norm", n.norm}});
  return {{"alpha", r.alpha},
          {"level", r.level},
          {"stored_level", r.stored_level},
          {"grid_level", r.grid_level},
          {"horizon", g.horizon()},
          {"scale", r.scale},
          {"norms", norms},
          {"chen", chen_json(r.chen, g)},
          {"shuffle", shuffle_json(r.shuffle, g)}};
}

double max_abs_triple(const Grid3View& b) {
  constexpr int kFullLevel = 7;
  constexpr std::size_t kSamples = std::size_t{1} << 20;
  const DyadicGrid& g = b.grid();
  const std::size_t stride = g.level() > kFullLevel ? std::size_t{1} << (g.level() - kFullLevel) : 1;
  double best = 0.0;
  for (std::size_t s = 0; s < g.size(); s += stride)
    for (std::size_t u = 0; u < g.size(); u += stride)
      for (std::size_t t = 0; t < g.size(); t += stride) best = std::max(best, std::abs(b(s, u, t)));
  if (stride > 1) {
    SplitMix64 rng(0x7a11e5ULL);
    for (std::size_t i = 0; i < kSamples; ++i) {
      const std::size_t s = rng.below(g.size()), u = rng.below(g.size()), t = rng.below(g.size());
      best = std::max(best, std::abs(b(s, u, t)));
    }
  }
  return best;
}

}  // namespace roughsew::cli
