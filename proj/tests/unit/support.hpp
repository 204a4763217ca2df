#pragma once

#include <cmath>
#include <cstdint>

#include "roughsew/dyadic_grid.hpp"
#include "roughsew/random.hpp"

namespace roughsew::testing {

inline Grid1Fn random_path(const DyadicGrid& grid, std::uint64_t seed, double scale = 1.0) {
  SplitMix64 rng(seed);
  return Grid1Fn::tabulate(grid, [&](double) { return scale * (2.0 * rng.uniform() - 1.0); });
}

inline Grid2Fn random_table(const DyadicGrid& grid, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return Grid2Fn::tabulate_indices(grid, [&](std::size_t, std::size_t) {
    return 2.0 * rng.uniform() - 1.0;
  });
}

// delta1(g) + c |t - s|^gamma with random g and c.
inline Grid2Fn mixed_germ(const DyadicGrid& grid, double gamma, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const double c = 0.5 + rng.uniform();
  const Grid1Fn g = random_path(grid, rng.next());
  return Grid2Fn::tabulate_indices(grid, [&](std::size_t j, std::size_t k) {
    const double gap = grid.span(j > k ? j - k : k - j);
    return g[k] - g[j] + (j == k ? 0.0 : c * std::pow(gap, gamma));
  });
}

}  // namespace roughsew::testing
