#include <cmath>
#include <numbers>

#include "doctest.h"
#include "roughsew/dyadic_grid.hpp"
#include "roughsew/error.hpp"
#include "support.hpp"

using namespace roughsew;

TEST_CASE("grid points are increasing, start at 0, end at T and nest") {
  const DyadicGrid g(3.0, 5);
  CHECK(g.size() == 33);
  CHECK(g.time(0) == 0.0);
  CHECK(g.time(g.last()) == 3.0);
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(g.time(k) > g.time(k - 1));
  const DyadicGrid f = g.refined();
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(f.time(2 * k) == g.time(k));
  CHECK(g.stride_in(f) == 2);
  CHECK_THROWS_AS(f.stride_in(g), LevelMismatch);
  CHECK_THROWS_AS(DyadicGrid(1.0, 31), std::invalid_argument);
  CHECK_THROWS_AS(DyadicGrid(0.0, 3), std::invalid_argument);
}

TEST_CASE("delta1 on simple paths") {
  const DyadicGrid g(1.0, 1);
  const Grid2Fn c = delta1(Grid1Fn::tabulate(g, [](double) { return 4.2; }));
  CHECK(c.sup_abs() == 0.0);
  const Grid2Fn d = delta1(Grid1Fn::tabulate(g, [](double t) { return t; }));
  CHECK(d(0, 2) == 1.0);
  CHECK(d(1, 0) == -0.5);
}

TEST_CASE("delta1 of the dyadic integral reproduces the non-locality combination") {
  // I(3/4) = A(0,1/2)/2 + A(0,1)/2 + A(1/2,3/4) - A(1/2,1)/2 for any A on level 2.
  // Checked through the sewing module in test_sewing; here only the grid
  // arithmetic of delta1 on level 2 is exercised.
  const DyadicGrid g(1.0, 2);
  const Grid1Fn i(g, {0.0, 0.25, 1.0, 2.25, 4.0});
  const Grid2Fn d = delta1(i);
  CHECK(d(0, 3) == 2.25);
  CHECK(d(3, 1) == -2.0);
}

TEST_CASE("delta2 examples") {
  const DyadicGrid g(1.0, 1);
  const Grid2Fn sq = Grid2Fn::tabulate(g, [](double s, double t) { return (t - s) * (t - s); });
  CHECK(delta2(sq)(0, 1, 2) == doctest::Approx(0.5));

  const Grid2Fn lg = Grid2Fn::tabulate(g, [](double s, double t) {
    const double h = std::abs(t - s);
    return h == 0.0 ? 0.0 : h * std::log(h);
  });
  CHECK(delta2(lg)(0, 1, 2) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));

  const DyadicGrid g5(1.0, 5);
  const Grid1Fn p = testing::random_path(g5, 3);
  CHECK(norm_c3(delta2(delta1(p)), 0.7) <= 1e-12 * p.sup_abs());
}

TEST_CASE("log germ coherence: entropy form and bound log 2") {
  const DyadicGrid g(1.0, 6);
  const Grid2Fn lg = Grid2Fn::tabulate(g, [](double s, double t) {
    const double h = std::abs(t - s);
    return h == 0.0 ? 0.0 : h * std::log(h);
  });
  const Grid3View b = delta2(lg);
  for (std::size_t s = 0; s < g.size(); s += 5)
    for (std::size_t t = s + 2; t < g.size(); t += 7)
      for (std::size_t u = s + 1; u < t; u += 3) {
        const double p = (g.time(t) - g.time(u)) / (g.time(t) - g.time(s));
        const double entropy = p * std::log(1 / p) + (1 - p) * std::log(1 / (1 - p));
        CHECK(b(s, u, t) == doctest::Approx((g.time(t) - g.time(s)) * entropy).epsilon(1e-12));
      }
  // Against |t - s| the bound is log 2; against the larger of the two gaps the
  // midpoint triple gives 2 log 2.
  double wide = 0.0;
  for (std::size_t s = 0; s < g.size(); ++s)
    for (std::size_t t = s + 1; t < g.size(); ++t)
      for (std::size_t u = s; u <= t; ++u) wide = std::max(wide, b(s, u, t) / g.span(t - s));
  CHECK(wide == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  CHECK(wide <= std::numbers::ln2 * (1 + 1e-12));
  const double n = norm_c3(b, 1.0, {.strategy = TripleStrategy::kFull, .ordered = true});
  CHECK(n == doctest::Approx(2 * std::numbers::ln2).epsilon(1e-12));
  CHECK(std::abs(b(0, 32, 64)) == doctest::Approx(std::numbers::ln2).epsilon(1e-15));
}

TEST_CASE("norm_c2 examples") {
  const DyadicGrid g(1.0, 4);
  CHECK(norm_c2(Grid2Fn::zero(g), 0.5) == 0.0);
  CHECK(norm_c2(Grid2Fn::tabulate(g, [](double s, double t) { return t - s; }), 1.0) ==
        doctest::Approx(1.0));
  const Grid2Fn r = Grid2Fn::tabulate(g, [](double s, double t) { return std::sqrt(std::abs(t - s)); });
  CHECK(norm_c2(r, 1.0) == doctest::Approx(4.0));
}

TEST_CASE("norm_c2 is a norm and monotone in gamma on T = 1") {
  const DyadicGrid g(1.0, 5);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Grid2Fn a = testing::random_table(g, seed);
    const Grid2Fn b = testing::random_table(g, seed + 100);
    const double na = norm_c2(a, 0.6), nb = norm_c2(b, 0.6);
    CHECK(norm_c2(a + b, 0.6) <= (na + nb) * (1 + 1e-15));
    CHECK(norm_c2(-2.5 * a, 0.6) == doctest::Approx(2.5 * na).epsilon(1e-15));
    CHECK(norm_c2(a, 0.3) <= norm_c2(a, 0.6));
    CHECK(norm_c2(a, 0.6) <= norm_c2(a, 1.4));
  }
}

TEST_CASE("norm_c3 of the square germ at level 2 matches brute force") {
  const DyadicGrid g(1.0, 2);
  const Grid2Fn sq = Grid2Fn::tabulate(g, [](double s, double t) { return (t - s) * (t - s); });
  const Grid3View b = delta2(sq);
  double brute = 0.0;
  for (std::size_t s = 0; s < g.size(); ++s)
    for (std::size_t u = 0; u < g.size(); ++u)
      for (std::size_t t = 0; t < g.size(); ++t) {
        if (s == t) continue;
        const double den = std::max(std::abs(g.time(t) - g.time(u)), std::abs(g.time(u) - g.time(s)));
        brute = std::max(brute, std::abs(b(s, u, t)) / (den * den));
      }
  CHECK(norm_c3(b, 2.0) == doctest::Approx(brute).epsilon(1e-15));
  CHECK(std::abs(b(0, 2, 4)) / 0.25 <= brute);
}

TEST_CASE("norm_c3 fast path, generic view and sampled strategy agree") {
  const DyadicGrid g(1.0, 5);
  const Grid2Fn a = testing::random_table(g, 9);
  const Grid3View fast = delta2(a);
  const Grid3View slow(g, [&](std::size_t s, std::size_t u, std::size_t t) {
    return a(s, t) - a(s, u) - a(u, t);
  });
  const double full = norm_c3(fast, 0.8, {.strategy = TripleStrategy::kFull});
  CHECK(norm_c3(slow, 0.8, {.strategy = TripleStrategy::kFull}) == full);
  const double sampled = norm_c3(fast, 0.8, {.strategy = TripleStrategy::kSampled});
  CHECK(sampled <= full);
  // Level 5 is below the sampled subgrid level, so sampling is exhaustive.
  CHECK(sampled == full);
  CHECK(norm_c3(fast, 0.8, {.strategy = TripleStrategy::kSampled}) == sampled);
}

TEST_CASE("norm_c1_holder examples") {
  const DyadicGrid g(1.0, 6);
  CHECK(norm_c1_holder(Grid1Fn::tabulate(g, [](double) { return 1.0; }), 0.5) == 0.0);
  CHECK(norm_c1_holder(Grid1Fn::tabulate(g, [](double t) { return t; }), 1.0) ==
        doctest::Approx(1.0));
  CHECK(norm_c1_holder(Grid1Fn::tabulate(g, [](double t) { return std::sqrt(t); }), 0.5) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(norm_c1_holder(Grid1Fn(g), 1.5), std::domain_error);
  CHECK_THROWS_AS(norm_c2(Grid2Fn::zero(g), 0.0), std::domain_error);
}

TEST_CASE("restriction to a coarser level is bit-exact") {
  const DyadicGrid fine(2.0, 6);
  const Grid2Fn a = Grid2Fn::tabulate(fine, [](double s, double t) { return std::sin(s) * t * t; });
  const Grid2Fn direct =
      Grid2Fn::tabulate(fine.with_level(5), [](double s, double t) { return std::sin(s) * t * t; });
  const Grid2Fn r = a.restricted(5);
  for (std::size_t j = 0; j < r.side(); ++j)
    for (std::size_t k = 0; k < r.side(); ++k) CHECK(r(j, k) == direct(j, k));
  const Grid1Fn p = testing::random_path(fine, 5);
  const Grid1Fn q = p.restricted(4);
  for (std::size_t k = 0; k < q.size(); ++k) CHECK(q[k] == p[4 * k]);
}

TEST_CASE("Grid2Fn rejects non-finite values and wrong sizes") {
  const DyadicGrid g(1.0, 1);
  CHECK_THROWS_AS(Grid2Fn(g, std::vector<double>(9, NAN)), std::invalid_argument);
  CHECK_THROWS_AS(Grid2Fn(g, std::vector<double>(8, 0.0)), LevelMismatch);
  CHECK_THROWS_AS(Grid1Fn(g, {0.0, 1.0}), LevelMismatch);
  CHECK_THROWS_AS(Grid2Fn::zero(DyadicGrid(1.0, 14)), std::invalid_argument);
}
