#include "roughsew/dyadic_grid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "roughsew/error.hpp"
#include "roughsew/random.hpp"

namespace roughsew {

DyadicGrid::DyadicGrid(double horizon, int level)
    : horizon_(horizon), level_(level) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("grid horizon must be a positive real");
  if (level < 0 || level > kMaxLevel)
    throw std::invalid_argument("grid level must lie in [0, " +
                                std::to_string(kMaxLevel) + "]");
}

std::size_t DyadicGrid::stride_in(const DyadicGrid& finer) const {
  if (finer.horizon_ != horizon_ || finer.level_ < level_)
    throw LevelMismatch("grid of level " + std::to_string(level_) +
                        " is not nested in grid of level " +
                        std::to_string(finer.level_));
  return std::size_t{1} << (finer.level_ - level_);
}

// ---------------------------------------------------------------- Grid1Fn

Grid1Fn::Grid1Fn(DyadicGrid grid)
    : grid_(grid), values_(grid.size(), 0.0) {}

Grid1Fn::Grid1Fn(DyadicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw LevelMismatch("Grid1Fn needs " + std::to_string(grid_.size()) +
                        " values, got " + std::to_string(values_.size()));
}

Grid1Fn Grid1Fn::restricted(int level) const {
  const DyadicGrid coarse = grid_.with_level(level);
  const std::size_t stride = coarse.stride_in(grid_);
  std::vector<double> v(coarse.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = values_[k * stride];
  return {coarse, std::move(v)};
}

double Grid1Fn::sup_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Grid1Fn& Grid1Fn::operator+=(const Grid1Fn& other) {
  if (!(other.grid_ == grid_)) throw LevelMismatch("Grid1Fn grids differ");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Grid1Fn& Grid1Fn::operator-=(const Grid1Fn& other) {
  if (!(other.grid_ == grid_)) throw LevelMismatch("Grid1Fn grids differ");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

Grid1Fn& Grid1Fn::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

Grid1Fn operator+(Grid1Fn a, const Grid1Fn& b) { return a += b; }
Grid1Fn operator-(Grid1Fn a, const Grid1Fn& b) { return a -= b; }
Grid1Fn operator*(double factor, Grid1Fn a) { return a *= factor; }

double sup_distance(const Grid1Fn& a, const Grid1Fn& b) {
  if (!(a.grid() == b.grid())) throw LevelMismatch("Grid1Fn grids differ");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

// ---------------------------------------------------------------- Grid2Fn

void Grid2Fn::check_level(const DyadicGrid& grid) {
  if (grid.level() > kMaxLevel)
    throw std::invalid_argument("Grid2Fn tables are limited to level " +
                                std::to_string(kMaxLevel));
}

Grid2Fn::Grid2Fn(DyadicGrid grid, std::vector<double> values)
    : grid_(grid), side_(grid.size()) {
  check_level(grid);
  if (values.size() != side_ * side_)
    throw LevelMismatch("Grid2Fn needs " + std::to_string(side_ * side_) +
                        " values, got " + std::to_string(values.size()));
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("Grid2Fn values must be finite");
  values_ = std::make_shared<const std::vector<double>>(std::move(values));
}

Grid2Fn Grid2Fn::zero(const DyadicGrid& grid) {
  check_level(grid);
  return {grid, std::vector<double>(grid.size() * grid.size(), 0.0)};
}

Grid2Fn Grid2Fn::restricted(int level) const {
  const DyadicGrid coarse = grid_.with_level(level);
  const std::size_t stride = coarse.stride_in(grid_);
  return tabulate_indices(coarse, [&](std::size_t j, std::size_t k) {
    return (*this)(j * stride, k * stride);
  });
}

Grid2Fn Grid2Fn::transposed() const {
  return tabulate_indices(grid_, [&](std::size_t j, std::size_t k) {
    return (*this)(k, j);
  });
}

double Grid2Fn::sup_abs() const {
  double m = 0.0;
  for (double v : *values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

template <typename Op>
Grid2Fn combine(const Grid2Fn& a, const Grid2Fn& b, Op op) {
  if (!(a.grid() == b.grid())) throw LevelMismatch("Grid2Fn grids differ");
  const auto av = a.values();
  const auto bv = b.values();
  std::vector<double> out(av.size());
  for (std::size_t i = 0; i < av.size(); ++i) out[i] = op(av[i], bv[i]);
  return {a.grid(), std::move(out)};
}

}  // namespace

Grid2Fn operator+(const Grid2Fn& a, const Grid2Fn& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

Grid2Fn operator-(const Grid2Fn& a, const Grid2Fn& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

Grid2Fn operator*(double factor, const Grid2Fn& a) {
  std::vector<double> out(a.values().begin(), a.values().end());
  for (double& v : out) v *= factor;
  return {a.grid(), std::move(out)};
}

Grid2Fn operator-(const Grid2Fn& a) { return -1.0 * a; }

double sup_distance(const Grid2Fn& a, const Grid2Fn& b) {
  if (!(a.grid() == b.grid())) throw LevelMismatch("Grid2Fn grids differ");
  const auto av = a.values();
  const auto bv = b.values();
  double m = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) m = std::max(m, std::abs(av[i] - bv[i]));
  return m;
}

// -------------------------------------------------------------- Grid3View

Grid3View::Grid3View(DyadicGrid grid, Fn fn) : grid_(grid), fn_(std::move(fn)) {}

Grid3View Grid3View::coboundary(Grid2Fn a) {
  Grid3View view(a.grid(), [a](std::size_t s, std::size_t u, std::size_t t) {
    return a(s, t) - a(s, u) - a(u, t);
  });
  view.source_ = std::move(a);
  return view;
}

double Grid3View::operator()(std::size_t s, std::size_t u, std::size_t t) const {
  return fn_(s, u, t);
}

Grid2Fn delta1(const Grid1Fn& path) {
  return Grid2Fn::tabulate_indices(path.grid(), [&](std::size_t j, std::size_t k) {
    return path[k] - path[j];
  });
}

Grid3View delta2(const Grid2Fn& a) { return Grid3View::coboundary(a); }

// ------------------------------------------------------------------ norms

namespace {

void check_exponent(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("Hoelder exponent must be positive");
}

// weights[d] = 1 / (d * mesh)^gamma for index gaps d >= 1.
std::vector<double> gap_weights(const DyadicGrid& grid, double gamma) {
  std::vector<double> w(grid.size(), 0.0);
  for (std::size_t d = 1; d < w.size(); ++d) w[d] = std::pow(grid.span(d), -gamma);
  return w;
}

std::size_t gap(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

double coboundary_triples_full(const Grid2Fn& a, const std::vector<double>& w, bool ordered) {
  const std::size_t n = a.side();
  const Grid2Fn at = a.transposed();
  double best = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const auto row_s = a.row(s);
    for (std::size_t t = ordered ? s + 1 : 0; t < n; ++t) {
      if (t == s) continue;
      const double a_st = row_s[t];
      const auto col_t = at.row(t);  // col_t[u] = A(u, t)
      const std::size_t u_end = ordered ? t + 1 : n;
      for (std::size_t u = ordered ? s : 0; u < u_end; ++u) {
        const double v = std::abs(a_st - row_s[u] - col_t[u]);
        const double r = v * w[std::max(gap(t, u), gap(u, s))];
        best = std::max(best, r);
      }
    }
  }
  return best;
}

template <typename Eval>
double triples_full(std::size_t n, const std::vector<double>& w, bool ordered, Eval&& eval) {
  double best = 0.0;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = ordered ? s + 1 : 0; t < n; ++t) {
      if (t == s) continue;
      for (std::size_t u = ordered ? s : 0; u < (ordered ? t + 1 : n); ++u)
        best = std::max(best, std::abs(eval(s, u, t)) * w[std::max(gap(t, u), gap(u, s))]);
    }
  return best;
}

template <typename Eval>
double triples_sampled(const DyadicGrid& grid, const std::vector<double>& w,
                       const TripleNormOptions& opt, Eval&& eval) {
  const std::size_t n = grid.size();
  auto ratio = [&](std::size_t s, std::size_t u, std::size_t t) {
    if (s == t) return 0.0;
    if (opt.ordered && !(s <= u && u <= t)) return 0.0;
    return std::abs(eval(s, u, t)) * w[std::max(gap(t, u), gap(u, s))];
  };
  double best = 0.0;
  // Every triple of the coarse subgrid.
  const int coarse_level = std::min(grid.level(), 7);
  const std::size_t stride = std::size_t{1} << (grid.level() - coarse_level);
  for (std::size_t s = 0; s < n; s += stride)
    for (std::size_t t = 0; t < n; t += stride)
      for (std::size_t u = 0; u < n; u += stride) best = std::max(best, ratio(s, u, t));
  // Midpoint triples of every dyadic cell.
  for (int lvl = 0; lvl < grid.level(); ++lvl) {
    const std::size_t cell = std::size_t{1} << (grid.level() - lvl);
    for (std::size_t s = 0; s + cell < n; s += cell) {
      best = std::max(best, ratio(s, s + cell / 2, s + cell));
      best = std::max(best, ratio(s + cell, s + cell / 2, s));
    }
  }
  SplitMix64 rng(opt.seed);
  for (std::size_t i = 0; i < opt.random_samples; ++i) {
    std::size_t s = rng.below(n), u = rng.below(n), t = rng.below(n);
    if (opt.ordered) {
      if (s > u) std::swap(s, u);
      if (u > t) std::swap(u, t);
      if (s > u) std::swap(s, u);
    }
    best = std::max(best, ratio(s, u, t));
  }
  return best;
}

}  // namespace

double norm_c2(const Grid2Fn& a, double gamma) {
  check_exponent(gamma);
  const auto w = gap_weights(a.grid(), gamma);
  const std::size_t n = a.side();
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto row = a.row(j);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) best = std::max(best, std::abs(row[k]) * w[gap(j, k)]);
  }
  return best;
}

double norm_c3(const Grid3View& b, double gamma, const TripleNormOptions& options) {
  check_exponent(gamma);
  const DyadicGrid& grid = b.grid();
  const auto w = gap_weights(grid, gamma);
  bool full = options.strategy == TripleStrategy::kFull;
  if (options.strategy == TripleStrategy::kAuto)
    full = grid.level() <= TripleNormOptions::kFullEnumerationMaxLevel;

  if (const auto& src = b.coboundary_source()) {
    if (full) return coboundary_triples_full(*src, w, options.ordered);
    const Grid2Fn& a = *src;
    return triples_sampled(grid, w, options, [&](std::size_t s, std::size_t u, std::size_t t) {
      return a(s, t) - a(s, u) - a(u, t);
    });
  }
  if (full) return triples_full(grid.size(), w, options.ordered, b);
  return triples_sampled(grid, w, options, b);
}

double norm_c1_holder(const Grid1Fn& path, double beta) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw std::domain_error("Hoelder exponent of a path must lie in (0, 1]");
  const auto w = gap_weights(path.grid(), beta);
  const std::size_t n = path.size();
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      best = std::max(best, std::abs(path[k] - path[j]) * w[k - j]);
  return best;
}

}  // namespace roughsew
