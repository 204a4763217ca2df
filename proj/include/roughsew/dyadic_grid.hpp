#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace roughsew {

/// Dyadic grid { k T 2^-M : k = 0..2^M } on [0, T].
///
/// Points are addressed by their integer index k; the real time is derived on
/// demand so that dyadic midpoints stay exact and grids of different levels
/// nest without rounding.
class DyadicGrid {
 public:
  static constexpr int kMaxLevel = 30;

  DyadicGrid(double horizon, int level);

  double horizon() const { return horizon_; }
  int level() const { return level_; }
  std::size_t size() const { return (std::size_t{1} << level_) + 1; }
  std::size_t last() const { return std::size_t{1} << level_; }

  double time(std::size_t k) const {
    return std::ldexp(static_cast<double>(k), -level_) * horizon_;
  }
  /// Length of `steps` consecutive cells.
  double span(std::size_t steps) const { return time(steps); }
  double mesh() const { return span(1); }

  DyadicGrid refined() const { return {horizon_, level_ + 1}; }
  DyadicGrid with_level(int level) const { return {horizon_, level}; }

  /// Index stride of this grid's points inside `finer` (same horizon, level >=).
  std::size_t stride_in(const DyadicGrid& finer) const;

  friend bool operator==(const DyadicGrid&, const DyadicGrid&) = default;

 private:
  double horizon_;
  int level_;
};

/// A real function sampled on every point of a dyadic grid.
class Grid1Fn {
 public:
  explicit Grid1Fn(DyadicGrid grid);
  Grid1Fn(DyadicGrid grid, std::vector<double> values);

  template <typename F>
  static Grid1Fn tabulate(const DyadicGrid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid.time(k));
    return {grid, std::move(v)};
  }

  const DyadicGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }
  std::span<const double> values() const { return values_; }

  /// Restriction to the nested grid of a lower level.
  Grid1Fn restricted(int level) const;
  double sup_abs() const;

  Grid1Fn& operator+=(const Grid1Fn& other);
  Grid1Fn& operator-=(const Grid1Fn& other);
  Grid1Fn& operator*=(double factor);

 private:
  DyadicGrid grid_;
  std::vector<double> values_;
};

Grid1Fn operator+(Grid1Fn a, const Grid1Fn& b);
Grid1Fn operator-(Grid1Fn a, const Grid1Fn& b);
Grid1Fn operator*(double factor, Grid1Fn a);

/// Sup-norm distance between two functions on the same grid.
double sup_distance(const Grid1Fn& a, const Grid1Fn& b);

/// A two-parameter function A(s, t) stored for every ordered pair of grid
/// indices, including s > t and the diagonal.
///
/// Storage is immutable and shared, so copies are cheap.
class Grid2Fn {
 public:
  /// Largest level for which the dense (2^M + 1)^2 table is allowed.
  static constexpr int kMaxLevel = 13;

  Grid2Fn(DyadicGrid grid, std::vector<double> values);

  /// Builds the table from f(j, k) on grid indices.
  template <typename F>
  static Grid2Fn tabulate_indices(const DyadicGrid& grid, F&& f) {
    check_level(grid);
    const std::size_t n = grid.size();
    std::vector<double> v(n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) v[j * n + k] = f(j, k);
    return {grid, std::move(v)};
  }

  /// Builds the table from f(s, t) on grid times.
  template <typename F>
  static Grid2Fn tabulate(const DyadicGrid& grid, F&& f) {
    return tabulate_indices(grid, [&](std::size_t j, std::size_t k) {
      return f(grid.time(j), grid.time(k));
    });
  }

  static Grid2Fn zero(const DyadicGrid& grid);

  const DyadicGrid& grid() const { return grid_; }
  std::size_t side() const { return side_; }
  double operator()(std::size_t j, std::size_t k) const {
    return (*values_)[j * side_ + k];
  }
  std::span<const double> row(std::size_t j) const {
    return {values_->data() + j * side_, side_};
  }
  std::span<const double> values() const { return *values_; }

  Grid2Fn restricted(int level) const;
  Grid2Fn transposed() const;
  double sup_abs() const;

  friend Grid2Fn operator+(const Grid2Fn& a, const Grid2Fn& b);
  friend Grid2Fn operator-(const Grid2Fn& a, const Grid2Fn& b);
  friend Grid2Fn operator*(double factor, const Grid2Fn& a);
  friend Grid2Fn operator-(const Grid2Fn& a);

  static void check_level(const DyadicGrid& grid);

 private:
  DyadicGrid grid_;
  std::size_t side_;
  std::shared_ptr<const std::vector<double>> values_;
};

double sup_distance(const Grid2Fn& a, const Grid2Fn& b);

/// Lazily evaluated three-parameter function on grid index triples.
///
/// When the view is the coboundary of a Grid2Fn the source is kept so that
/// norm computations can take a fast path over the raw table.
class Grid3View {
 public:
  using Fn = std::function<double(std::size_t, std::size_t, std::size_t)>;

  Grid3View(DyadicGrid grid, Fn fn);

  static Grid3View coboundary(Grid2Fn a);

  const DyadicGrid& grid() const { return grid_; }
  double operator()(std::size_t s, std::size_t u, std::size_t t) const;
  const std::optional<Grid2Fn>& coboundary_source() const { return source_; }

 private:
  DyadicGrid grid_;
  Fn fn_;
  std::optional<Grid2Fn> source_;
};

/// (delta I)(s, t) = I(t) - I(s).
Grid2Fn delta1(const Grid1Fn& path);

/// (delta A)(s, u, t) = A(s, t) - A(s, u) - A(u, t).
Grid3View delta2(const Grid2Fn& a);

enum class TripleStrategy {
  kAuto,     // full enumeration up to kFullEnumerationMaxLevel, sampled above
  kFull,
  kSampled,
};

struct TripleNormOptions {
  static constexpr int kFullEnumerationMaxLevel = 8;

  TripleStrategy strategy = TripleStrategy::kAuto;
  /// Number of pseudo-random triples added by the sampled strategy.
  std::size_t random_samples = std::size_t{1} << 21;
  std::uint64_t seed = 0x5eed5eedULL;
  /// Restrict to ordered triples s <= u <= t, s < t.
  bool ordered = false;
};

/// max over pairs s != t of |A(s, t)| / |t - s|^gamma.
double norm_c2(const Grid2Fn& a, double gamma);

/// max over triples with s != t of |B(s, u, t)| / max(|t - u|, |u - s|)^gamma.
///
/// The sampled strategy enumerates every triple of the level-7 subgrid, every
/// dyadic midpoint triple and a fixed pseudo-random set of triples, so it is
/// deterministic and never exceeds the full value.
double norm_c3(const Grid3View& b, double gamma,
               const TripleNormOptions& options = {});

/// Hoelder seminorm of a path: norm_c2(delta1(path), beta), 0 < beta <= 1.
double norm_c1_holder(const Grid1Fn& path, double beta);

}  // namespace roughsew
