#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "roughsew/dyadic_grid.hpp"

namespace roughsew {

// Synthetic Hoelder paths and germs used as test inputs.

struct PowerPath {
  double alpha;  // t^alpha
};

/// W(t) = sum_n a^n sin(pi b^n t / T); Hoelder exponent log(1/a) / log(b).
struct WeierstrassPath {
  double a;
  double b;
};

/// Random midpoint displacement: the midpoint of each level-n cell moves by an
/// independent N(0, 1) variable times T^alpha 2^-(alpha n).
struct MidpointDisplacementPath {
  double alpha;
  std::uint64_t seed;
};

/// sum_i coeffs[i] t^i, shifted so the value at 0 is 0.
struct SmoothPolyPath {
  std::vector<double> coeffs;
};

struct PathSpec {
  std::variant<PowerPath, WeierstrassPath, MidpointDisplacementPath, SmoothPolyPath> kind;
  double horizon = 1.0;
  int level = 8;
  /// Hoelder exponent the caller relies on; Weierstrass parameters with
  /// a b <= 1 are rejected when one is declared.
  std::optional<double> declared_alpha;
};

/// Deterministic in the spec; value 0 at t = 0. Throws std::invalid_argument
/// for invalid parameters.
Grid1Fn generate_path(const PathSpec& spec);

/// Nominal Hoelder exponent of the generated path (1 for smooth kinds).
double nominal_holder_exponent(const PathSpec& spec);

struct CoboundaryGerm {
  Grid1Fn path;
};
/// A(s, t) = Y(s) (X(t) - X(s)).
struct YoungProductGerm {
  Grid1Fn x;
  Grid1Fn y;
};
/// A(s, t) = |t - s| log|t - s|, A(t, t) = 0.
struct LogGerm {};
/// A(s, t) = coeff |t - s|^gamma.
struct PowerGerm {
  double gamma;
  double coeff = 1.0;
};
struct CustomGerm {
  std::function<double(double s, double t)> fn;
};

struct GermSpec {
  std::variant<CoboundaryGerm, YoungProductGerm, LogGerm, PowerGerm, CustomGerm> kind;
};

/// Samples the germ on `grid`. Path-based germs accept paths sampled on the
/// same or a finer nested grid.
Grid2Fn generate_germ(const GermSpec& spec, const DyadicGrid& grid);

}  // namespace roughsew
