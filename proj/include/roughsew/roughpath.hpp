#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include "roughsew/dyadic_grid.hpp"
#include "roughsew/sewing.hpp"
#include "roughsew/shuffle.hpp"

namespace roughsew {

/// N = floor(1/alpha) for alpha in (0, 1). Throws std::domain_error otherwise.
int truncation_level(double alpha);

/// One-parameter functions f^h, one per Lyndon word h with |h| <= N, each
/// vanishing at 0. These coordinates parametrise rough paths.
struct HolderFamily {
  std::shared_ptr<const ShuffleAlgebra> algebra;
  DyadicGrid grid;
  double alpha = 0.0;
  std::map<Word, Grid1Fn> components;

  int level() const { return truncation_level(alpha); }
  /// Every component identically zero.
  static HolderFamily zero(std::shared_ptr<const ShuffleAlgebra> algebra, const DyadicGrid& grid,
                           double alpha);
  /// Throws std::invalid_argument when the components do not match the
  /// Lyndon words of degree <= N, live on another grid or do not vanish at 0.
  void validate() const;

  friend HolderFamily operator+(const HolderFamily& a, const HolderFamily& b);
  friend HolderFamily operator-(const HolderFamily& a, const HolderFamily& b);
  friend HolderFamily operator*(double factor, const HolderFamily& a);
};

/// Values <X_{s,t}, w> on every ordered pair of the grid (both orderings) for
/// every word 1 <= |w| <= stored_level.
class RoughPathGrid {
 public:
  /// values[id] for each word id of degree <= stored_level, in algebra order.
  RoughPathGrid(std::shared_ptr<const ShuffleAlgebra> algebra, DyadicGrid grid, double alpha,
                int stored_level, std::vector<Grid2Fn> values);

  const std::shared_ptr<const ShuffleAlgebra>& algebra() const { return algebra_; }
  const DyadicGrid& grid() const { return grid_; }
  double alpha() const { return alpha_; }
  /// floor(1/alpha).
  int level() const { return truncation_level(alpha_); }
  int stored_level() const { return stored_level_; }
  std::size_t word_count() const { return values_.size(); }

  const Grid2Fn& values(const Word& w) const;
  const Grid2Fn& values(std::size_t id) const { return values_[id]; }
  /// Largest |<X_{s,t}, w>| over stored words and pairs.
  double scale() const;

 private:
  std::shared_ptr<const ShuffleAlgebra> algebra_;
  DyadicGrid grid_;
  double alpha_;
  int stored_level_;
  std::vector<Grid2Fn> values_;
};

/// delta<X, w>(s, u, t) - sum over D'w of <X_{s,u}, w1><X_{u,t}, w2>.
double chen_defect(const RoughPathGrid& x, const Word& w, std::size_t s, std::size_t u,
                   std::size_t t);

struct ChenDefectMax {
  double value = 0.0;
  Word word;
  std::size_t s = 0, u = 0, t = 0;
};

struct ShuffleDefectMax {
  double value = 0.0;
  Word left, right;
  std::size_t s = 0, t = 0;
};

/// Largest |chen_defect| over stored words and grid triples. Every triple is
/// visited up to kFullTripleLevel; above it the triples of that subgrid plus
/// a fixed pseudo-random set.
inline constexpr int kFullTripleLevel = 8;
ChenDefectMax max_chen_defect(const RoughPathGrid& x);
/// Largest |<X, u sh v> - <X, u><X, v>| over word pairs with
/// |u| + |v| <= stored_level and all grid pairs.
ShuffleDefectMax max_shuffle_defect(const RoughPathGrid& x);

/// The inverse of `project`: level 1 is delta1(f^(i)); each Lyndon h of
/// degree n = 2..N gets
///   F(s, t) = sum over D'h of <X_{0,s}, h1><X_{s,t}, h2>,
///   <X, h> = -(F - delta1(I(F))) + delta1(f^h),
/// with I the sewing map at gamma = alpha n; non-Lyndon words are their
/// Lyndon polynomial evaluated pair by pair. Throws AlphaReciprocalInteger
/// when 1/alpha is an integer.
RoughPathGrid extend(const HolderFamily& f);

/// f^h = I(<X, h>) at gamma = alpha |h| for each Lyndon h with |h| <= N.
HolderFamily project(const RoughPathGrid& x);

/// Adds levels stored_level+1..target_level. Lyndon words are sewn with
/// Riemann sums (gamma = alpha n > 1) from F as in `extend` with f^h = 0; the
/// other words come from their Lyndon polynomial. Throws TruncationExceeded
/// when the algebra is truncated below target_level.
RoughPathGrid extend_above_n(const RoughPathGrid& x, int target_level,
                             const RiemannOptions& options = {});

/// extend(g + project(x)).
RoughPathGrid act(const HolderFamily& g, const RoughPathGrid& x);

/// Sum over Lyndon h, |h| <= N, of norm_c2(<X - Y, h>, alpha |h|).
double rp_distance(const RoughPathGrid& x, const RoughPathGrid& y);
/// Sum over Lyndon h, |h| <= N, of norm_c1_holder(f^h - g^h, alpha |h|).
double family_distance(const HolderFamily& f, const HolderFamily& g);

struct WordNorm {
  Word word;
  double exponent = 0.0;
  double norm = 0.0;
};

struct HolderReport {
  double alpha = 0.0;
  int level = 0;
  int stored_level = 0;
  int grid_level = 0;
  std::vector<WordNorm> norms;  // by word id
  ChenDefectMax chen;
  ShuffleDefectMax shuffle;
  double scale = 0.0;
};

HolderReport holder_report(const RoughPathGrid& x);

}  // namespace roughsew
