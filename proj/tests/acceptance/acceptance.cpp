// Acceptance checks. `acceptance --criterion N` runs one criterion; without
// arguments every criterion runs. Each prints one line:
//   AC<N> PASS|FAIL <title>: <measurements>
// and the exit code is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roughsew/control.hpp"
#include "roughsew/paths.hpp"
#include "roughsew/random.hpp"
#include "roughsew/roughpath.hpp"
#include "roughsew/sewing.hpp"
#include "roughsew/shuffle.hpp"

using namespace roughsew;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Grid1Fn uniform_path(const DyadicGrid& grid, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return Grid1Fn::tabulate(grid, [&](double) { return 2.0 * rng.uniform() - 1.0; });
}

// delta1(g) + c |t - s|^gamma with uniform random g and c in [0.5, 1.5).
Grid2Fn mixed_germ(const DyadicGrid& grid, double gamma, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double c = 0.5 + rng.uniform();
  const Grid1Fn g = uniform_path(grid, rng.next());
  return delta1(g) + generate_germ({PowerGerm{gamma, c}}, grid);
}

double max_abs_all_triples(const Grid3View& b) {
  const std::size_t n = b.grid().size();
  double m = 0.0;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t t = 0; t < n; ++t) m = std::max(m, std::abs(b(s, u, t)));
  return m;
}

constexpr double kGammas[] = {0.3, 0.5, 0.8, 1.0, 1.3, 2.0};
constexpr int kGermsPerGamma = 20;

Verdict ac1() {
  const auto start = Clock::now();
  const DyadicGrid grid(1.0, 8);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Grid1Fn p = uniform_path(grid, seed);
    worst = std::max(worst, norm_c3(delta2(delta1(p)), 1.0, {.strategy = TripleStrategy::kFull}) /
                                p.sup_abs());
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-12 && elapsed < 10.0,
          "max norm/max|I| " + num(worst) + " (bound 1e-12), " + num(elapsed) + " s (limit 10 s)"};
}

Verdict ac2() {
  const DyadicGrid grid(1.0, 7);
  double worst = 0.0;
  for (double gamma : kGammas)
    for (int i = 0; i < kGermsPerGamma; ++i) {
      const Grid2Fn a = mixed_germ(grid, gamma, 1000 * static_cast<std::uint64_t>(gamma * 10) + i);
      const Grid2Fn r = lambda_unordered(a, gamma);
      worst = std::max(worst, max_abs_all_triples(delta2(r - a)) / a.sup_abs());
    }
  return {worst <= 1e-10, "max |delta R - delta A| / max|A| " + num(worst) + " (bound 1e-10)"};
}

Verdict ac3() {
  double worst = 0.0;
  for (int m = 4; m <= 9; ++m) {
    const DyadicGrid grid(1.0, m);
    for (double gamma : {0.3, 0.5, 0.8})
      for (int i = 0; i < kGermsPerGamma; ++i) {
        const Grid2Fn a = mixed_germ(grid, gamma, 1000 * static_cast<std::uint64_t>(gamma * 10) + i);
        const Grid2Fn r = lambda_unordered(a, gamma);
        const double ratio =
            norm_c2(r, gamma) / ((constant_c(gamma, 1.0) + 1) * norm_c3(delta2(a), gamma));
        worst = std::max(worst, ratio);
      }
  }
  return {worst <= 1.0, "max ||R|| / ((C+1) ||delta A||) " + num(worst) + " (bound 1)"};
}

Verdict ac4() {
  const auto start = Clock::now();
  const double bound = constant_c(1.0, 1.0) * std::numbers::ln2;
  bool weighted_ok = true, monotone = true, increments_ok = true;
  double weighted_max = 0.0, previous = 0.0;
  std::ostringstream incs;
  for (int m = 4; m <= 12; ++m) {
    const Grid2Fn r = sew_low(generate_germ({LogGerm{}}, DyadicGrid(1.0, m)), 1.0).remainder;
    const double weighted = log_weighted_norm(r), plain = norm_c2(r, 1.0);
    weighted_max = std::max(weighted_max, weighted);
    weighted_ok = weighted_ok && weighted <= bound;
    if (m > 4) {
      monotone = monotone && plain > previous;
      const double inc = plain - previous;
      if (m >= 8) {
        increments_ok = increments_ok && std::abs(inc - std::numbers::ln2) <= 0.2 * std::numbers::ln2;
        incs << (m == 8 ? "" : ",") << num(inc);
      }
    }
    previous = plain;
  }
  const double elapsed = seconds_since(start);
  return {weighted_ok && monotone && increments_ok && elapsed < 60.0,
          "max log-weighted " + num(weighted_max) + " (bound " + num(bound) + "), monotone " +
              (monotone ? "yes" : "no") + ", increments M=8..12 [" + incs.str() +
              "] (target log 2 = " + num(std::numbers::ln2) + " within 20%), " + num(elapsed) +
              " s (limit 60 s)"};
}

Verdict ac5() {
  const DyadicGrid grid(1.0, 2);
  const Grid2Fn a = Grid2Fn::tabulate(grid, [](double s, double t) { return s + 2 * t; });
  const double v = sew_low(a, 0.5).integral[3];
  return {v == 2.25, "I(3/4) = " + num(v) + " (expected 2.25 exactly)"};
}

Verdict ac6() {
  const int m = 8;
  const DyadicGrid grid(1.0, m);
  const Grid2Fn a = generate_germ({PowerGerm{1.3}}, grid);
  const double coherence = norm_c3(delta2(a), 1.3);
  const double gap = sup_distance(sew_high(a, 1.3).integral, sew_dyadic(a).integral);
  const double bound = std::pow(2.0, -0.3 * m) * coherence * 10;

  const Grid1Fn x = generate_path({PowerPath{0.6}, 1.0, m + 4});
  const Grid1Fn sewn = sew_high(generate_germ({YoungProductGerm{x, x}}, grid), 1.2).integral;
  const std::size_t stride = grid.stride_in(x.grid());
  double running = 0.0, young = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k % stride == 0) young = std::max(young, std::abs(sewn[k / stride] - running));
    if (k + 1 < x.size()) running += x[k] * (x[k + 1] - x[k]);
  }
  const double young_bound = 5 * std::pow(2.0, -0.2 * m);
  return {gap <= bound && young <= young_bound,
          "Riemann vs dyadic " + num(gap) + " (bound " + num(bound) + "), Young error " +
              num(young) + " (bound " + num(young_bound) + ")"};
}

Verdict ac7() {
  const auto start = Clock::now();
  long failures = 0, cases = 0;
  for (int d = 1; d <= 3; ++d) {
    const ShuffleAlgebra alg(d, 4);
    std::vector<Word> words{Word{}};
    for (int n = 1; n <= 4; ++n)
      for (const Word& w : alg.words(n)) words.push_back(w);
    for (const Word& u : words)
      for (const Word& v : words) {
        if (u.degree() + v.degree() > 4) continue;
        ++cases;
        failures += shuffle(u, v) != shuffle(v, u);
        if (!u.empty() && !v.empty()) failures += !alg.compatibility_defect(u, v).empty();
        for (const Word& w : words) {
          if (u.degree() + v.degree() + w.degree() > 4) continue;
          ++cases;
          failures += shuffle(shuffle(u, v), WordCombination{{w, 1}}) !=
                      shuffle(WordCombination{{u, 1}}, shuffle(v, w));
        }
      }
    for (std::size_t id = 0; id < alg.word_count(); ++id) {
      const Word& w = alg.word(id);
      cases += 2;
      failures += !alg.coassociativity_defect(w).empty();
      failures += alg.expand(alg.radford_decompose(w)) != RationalCombination{{w, Rational(1)}};
    }
  }
  const double elapsed = seconds_since(start);
  return {failures == 0 && elapsed < 30.0, std::to_string(failures) + " failures in " +
                                               std::to_string(cases) + " exact cases, " +
                                               num(elapsed) + " s (limit 30 s)"};
}

HolderFamily midpoint_family(std::shared_ptr<const ShuffleAlgebra> alg, const DyadicGrid& grid,
                             double alpha, std::uint64_t seed, bool higher) {
  HolderFamily f = HolderFamily::zero(alg, grid, alpha);
  std::uint64_t s = seed;
  for (auto& [h, path] : f.components) {
    if (h.degree() > 1 && !higher) continue;
    path = generate_path(
        {MidpointDisplacementPath{std::min(1.0, alpha * h.degree()), s++}, grid.horizon(), grid.level()});
  }
  return f;
}

Verdict ac8() {
  auto alg = std::make_shared<const ShuffleAlgebra>(2, 3);
  const DyadicGrid grid(1.0, 8);
  const HolderFamily f = midpoint_family(alg, grid, 0.45, 7, false);
  const RoughPathGrid x = extend(f);
  const HolderReport r2 = holder_report(x);
  bool finite = true;
  for (const WordNorm& n : r2.norms) finite = finite && std::isfinite(n.norm);
  const RoughPathGrid y = extend_above_n(x, 3);
  const HolderReport r3 = holder_report(y);
  const bool pass = r2.chen.value <= 1e-9 * r2.scale && r2.shuffle.value <= 1e-9 * r2.scale &&
                    finite && r3.chen.value <= 1e-8 * r3.scale &&
                    r3.shuffle.value <= 1e-8 * r3.scale;
  return {pass, "level 2: chen " + num(r2.chen.value) + ", shuffle " + num(r2.shuffle.value) +
                    " (bound " + num(1e-9 * r2.scale) + "), norms finite " +
                    (finite ? "yes" : "no") + "; level 3: chen " + num(r3.chen.value) +
                    ", shuffle " + num(r3.shuffle.value) + " (bound " + num(1e-8 * r3.scale) + ")"};
}

double max_value_gap(const RoughPathGrid& x, const RoughPathGrid& y) {
  double m = 0.0;
  for (std::size_t id = 0; id < x.word_count(); ++id)
    m = std::max(m, sup_distance(x.values(id), y.values(id)));
  return m;
}

Verdict ac9() {
  const DyadicGrid grid(1.0, 6);
  double round_trip = 0.0, action = 0.0, transitive = 0.0;
  for (double alpha : {0.45, 0.3}) {
    auto alg = std::make_shared<const ShuffleAlgebra>(2, truncation_level(alpha));
    for (std::uint64_t i = 0; i < 10; ++i) {
      const HolderFamily f = midpoint_family(alg, grid, alpha, 100 + 10 * i, true);
      const HolderFamily g = midpoint_family(alg, grid, alpha, 300 + 10 * i, true);
      const HolderFamily g2 = midpoint_family(alg, grid, alpha, 500 + 10 * i, true);
      const RoughPathGrid x = extend(f);
      const HolderFamily back = project(x);
      for (const auto& [h, path] : f.components)
        round_trip = std::max(round_trip, sup_distance(back.components.at(h), path));

      const double scale = std::max(1.0, x.scale());
      action = std::max(action, max_value_gap(act(g2, act(g, x)), act(g + g2, x)) / scale);
      const RoughPathGrid target = extend(g);
      const RoughPathGrid moved = act(project(target) - project(x), x);
      transitive = std::max(transitive, max_value_gap(moved, target) / std::max(1.0, target.scale()));
    }
  }
  return {round_trip <= 1e-9 && action <= 1e-9 && transitive <= 1e-9,
          "project(extend f) error " + num(round_trip) + ", g'(gX) - (g+g')X " + num(action) +
              ", transitivity " + num(transitive) + " (bound 1e-9)"};
}

Verdict ac10() {
  constexpr double kAlpha = 0.45;
  constexpr int kFine = 7;
  auto alg = std::make_shared<const ShuffleAlgebra>(2, 2);
  const DyadicGrid fine(1.0, kFine);
  const HolderFamily f_fine = midpoint_family(alg, fine, kAlpha, 7, true);
  const HolderFamily p_fine = midpoint_family(alg, fine, kAlpha, 900, true);
  std::ostringstream table;
  bool pass = true;
  for (double eps : {1e-3, 1e-4}) {
    double lo = INFINITY, hi = 0.0;
    table << (eps == 1e-3 ? "" : "; ") << "eps " << num(eps) << ": L =";
    for (int m = 5; m <= 7; ++m) {
      const DyadicGrid grid = fine.with_level(m);
      HolderFamily f = HolderFamily::zero(alg, grid, kAlpha), p = f;
      for (const auto& [h, path] : f_fine.components) {
        f.components.at(h) = path.restricted(m);
        p.components.at(h) = p_fine.components.at(h).restricted(m);
      }
      // Unit perturbation in the family distance at this level.
      p = (1.0 / family_distance(p, HolderFamily::zero(alg, grid, kAlpha))) * p;
      const double l = rp_distance(extend(f), extend(f + eps * p)) / eps;
      lo = std::min(lo, l);
      hi = std::max(hi, l);
      table << ' ' << num(l);
    }
    pass = pass && std::isfinite(hi) && hi <= 2 * lo;
  }
  return {pass, table.str() + " (stable within factor 2 across M = 5, 6, 7)"};
}

struct Criterion {
  const char* title;
  std::function<Verdict()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"exactness of the cochain complex", ac1},
      {"sewing identity on all triples", ac2},
      {"quantitative bound for gamma < 1", ac3},
      {"gamma = 1 log germ regime", ac4},
      {"exact non-locality vector", ac5},
      {"gamma > 1 consistency and Young oracle", ac6},
      {"shuffle algebra exactness", ac7},
      {"Lyons-Victoir lift", ac8},
      {"homeomorphism round trip and action laws", ac9},
      {"empirical Lipschitz continuity of extend", ac10},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "criterion number(s), 1-10")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria().size()); ++i) selected.push_back(i);

  int failed = 0;
  for (int i : selected) {
    const Criterion& c = criteria()[static_cast<std::size_t>(i - 1)];
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "AC" << i << ' ' << (v.pass ? "PASS" : "FAIL") << ' ' << c.title << ": "
              << v.detail << std::endl;
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
