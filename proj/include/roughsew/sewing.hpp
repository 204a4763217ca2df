#pragma once

#include <optional>
#include <vector>

#include "roughsew/dyadic_grid.hpp"

namespace roughsew {

/// Output of a sewing: the integral I with I(0) = 0 and the remainder
/// R = A - delta1(I) on every pair of the grid (both orderings), so that
/// delta2(R) = delta2(A).
struct SewResult {
  Grid1Fn integral;
  Grid2Fn remainder;
};

/// Result of the dyadic construction. `corrections[n][k]` is the correction
/// attached to the k-th cell of level n; on that cell the remainder equals
/// -corrections[n][k] (R = A - delta I convention).
struct DyadicSewResult : SewResult {
  std::vector<std::vector<double>> corrections;
};

/// Dyadic sewing, valid for every input: I is built level by level on the
/// dyadic points with
///   c(0,0) = 0, c(2k, n+1) = c(k, n) / 2,
///   c(2k+1, n+1) = c(k, n) / 2 + (delta A)(cell k of level n: left, mid, right)
///   I(odd point 2l+1 of level n) = I(2l) + A(2l, 2l+1) + c(2l, n).
/// The map A -> I is linear and depends on A only through its ordered pairs.
DyadicSewResult sew_dyadic(const Grid2Fn& a);

/// The sewing map for 0 < gamma <= 1. Throws std::domain_error outside that
/// range and LevelMismatch when `output` is given and differs from A's grid.
DyadicSewResult sew_low(const Grid2Fn& a, double gamma,
                        const std::optional<DyadicGrid>& output = std::nullopt);

struct RiemannOptions {
  /// Grid level of the returned integral; defaults to the level of A.
  std::optional<int> output_level;
  /// Level of the dyadic partition used in the Riemann sums; defaults to the
  /// level of A. Points not on the partition are appended to it.
  std::optional<int> partition_level;
  /// Known bound K on norm_c3(delta2(A), gamma). When absent it is estimated
  /// on the level-6 subgrid and inflated by kEstimatedBoundSafety.
  std::optional<double> coherence_bound;
  bool check_convergence = true;

  static constexpr int kEstimateLevel = 6;
  static constexpr double kEstimatedBoundSafety = 4.0;
};

struct RiemannSewResult : SewResult {
  /// refinements[m] = sum of A over the level-m dyadic partition of [0, T],
  /// for m = 0..partition_level.
  std::vector<double> refinements;
};

/// The sewing map for gamma > 1: I(t) is the Riemann sum of A along the
/// dyadic partition of [0, t]. Throws NotConverging when consecutive
/// refinements differ by more than K T^gamma 2^-gamma 2^((1-gamma) m), which
/// flags inputs whose coherence is weaker than the declared gamma.
RiemannSewResult sew_high(const Grid2Fn& a, double gamma, const RiemannOptions& options = {});

/// Integration map: I(0) = 0 and delta1(I) = A - lambda_unordered(A).
/// Dispatches to sew_low for gamma <= 1 and sew_high above.
Grid1Fn integrate(const Grid2Fn& a, double gamma);

/// Both outputs of the dispatched sewing.
SewResult sew(const Grid2Fn& a, double gamma);

/// Remainder R = Lambda(delta A) on all ordered and unordered pairs.
Grid2Fn lambda_unordered(const Grid2Fn& a, double gamma);

/// Continuity constant of the sewing map:
///   gamma > 1:     (2^gamma - 2)^-1
///   0 < gamma < 1: 2^(gamma+1) / (1 - 2^(1 - gamma (floor(1/gamma) + 1)))
///                  * (2 + floor(1/gamma) + 2 / ((2^(1-gamma) - 1)(1 - 2^-gamma)))
///   gamma = 1:     96 / log 2 * (1 + |log T|)
double constant_c(double gamma, double horizon);

/// max over pairs s != t of |R(s, t)| / ((1 + |log|t - s||) |t - s|).
double log_weighted_norm(const Grid2Fn& r);

struct SewingReport {
  double gamma = 0.0;
  double input_c3_norm = 0.0;
  /// norm_c2(R, gamma), or log_weighted_norm(R) when gamma == 1.
  double output_c2_norm = 0.0;
  /// constant_c(gamma, T) + 1.
  double bound_constant = 0.0;
  bool bound_satisfied = false;
  int grid_level = 0;
  double tolerance = 0.0;
};

/// Default absolute tolerance factor; "zero" means <= kZeroTolerance * max|A|.
inline constexpr double kZeroTolerance = 1e-10;

/// Checks the continuity estimate for the remainder of `a`.
SewingReport make_sewing_report(const Grid2Fn& a, const Grid2Fn& remainder, double gamma,
                                const TripleNormOptions& options = {},
                                double relative_tolerance = kZeroTolerance);

}  // namespace roughsew
