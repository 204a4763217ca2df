#include "roughsew/roughpath.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "roughsew/error.hpp"
#include "roughsew/random.hpp"

namespace roughsew {

int truncation_level(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("Hoelder exponent alpha must lie in (0, 1)");
  return static_cast<int>(std::floor(1.0 / alpha));
}

namespace {

void check_reciprocal(double alpha) {
  const double inv = 1.0 / alpha;
  if (std::abs(inv - std::round(inv)) <= 1e-12 * inv)
    throw AlphaReciprocalInteger("1/alpha = " + std::to_string(inv) +
                                 " is an integer; the level-N sewing would sit at gamma = 1. "
                                 "Perturb alpha slightly (e.g. " +
                                 std::to_string(alpha * 0.98) + ")");
}

void check_compatible(const HolderFamily& a, const HolderFamily& b) {
  if (a.algebra != b.algebra && !(a.algebra->alphabet_size() == b.algebra->alphabet_size() &&
                                  a.algebra->truncation() == b.algebra->truncation()))
    throw std::invalid_argument("Hoelder families use different algebras");
  if (!(a.grid == b.grid)) throw LevelMismatch("Hoelder families live on different grids");
  if (a.alpha != b.alpha) throw std::invalid_argument("Hoelder families have different alpha");
}

template <typename Op>
HolderFamily combine(const HolderFamily& a, const HolderFamily& b, Op op) {
  check_compatible(a, b);
  HolderFamily out{a.algebra, a.grid, a.alpha, {}};
  for (const auto& [h, fa] : a.components) {
    const auto it = b.components.find(h);
    if (it == b.components.end())
      throw std::invalid_argument("component " + h.to_string() + " missing");
    out.components.emplace(h, op(fa, it->second));
  }
  if (b.components.size() != a.components.size())
    throw std::invalid_argument("Hoelder families have different components");
  return out;
}

/// sum over D'h of <X_{0,s}, h1><X_{s,t}, h2> on every pair.
Grid2Fn chen_source(const ShuffleAlgebra& algebra, const DyadicGrid& grid,
                    const std::vector<std::optional<Grid2Fn>>& values, std::size_t id) {
  const std::size_t n = grid.size();
  std::vector<double> out(n * n, 0.0);
  for (const auto& [a, b] : algebra.reduced_coproduct_ids(id)) {
    const Grid2Fn& xa = *values[a];
    const Grid2Fn& xb = *values[b];
    for (std::size_t j = 0; j < n; ++j) {
      const double coef = xa(0, j);
      if (coef == 0.0) continue;
      const auto row = xb.row(j);
      double* dst = out.data() + j * n;
      for (std::size_t k = 0; k < n; ++k) dst[k] += coef * row[k];
    }
  }
  return {grid, std::move(out)};
}

/// Lyndon-polynomial value of a word on every pair.
Grid2Fn polynomial_values(const ShuffleAlgebra& algebra, const DyadicGrid& grid,
                          const std::vector<std::optional<Grid2Fn>>& values, const Word& w) {
  const std::size_t n = grid.size();
  std::vector<double> out(n * n, 0.0);
  for (const auto& [monomial, coeff] : algebra.radford_decompose(w).terms()) {
    const double c = coeff.convert_to<double>();
    std::vector<std::span<const double>> factors;
    for (const Word& h : monomial) factors.push_back(values[algebra.id(h)]->values());
    for (std::size_t p = 0; p < out.size(); ++p) {
      double term = c;
      for (const auto& f : factors) term *= f[p];
      out[p] += term;
    }
  }
  return {grid, std::move(out)};
}

/// Fills degree n: Lyndon words through `sew_lyndon`, then the rest.
template <typename SewLyndon>
void build_degree(const ShuffleAlgebra& algebra, const DyadicGrid& grid, int n,
                  std::vector<std::optional<Grid2Fn>>& values, SewLyndon&& sew_lyndon) {
  for (const Word& h : algebra.lyndon_words(n)) {
    const std::size_t id = algebra.id(h);
    values[id] = sew_lyndon(h, chen_source(algebra, grid, values, id));
  }
  for (const Word& w : algebra.words(n)) {
    const std::size_t id = algebra.id(w);
    if (!values[id]) values[id] = polynomial_values(algebra, grid, values, w);
  }
}

std::vector<Grid2Fn> unwrap(std::vector<std::optional<Grid2Fn>>&& values) {
  std::vector<Grid2Fn> out;
  out.reserve(values.size());
  for (auto& v : values) out.push_back(std::move(*v));
  return out;
}

std::size_t words_up_to(const ShuffleAlgebra& algebra, int degree) {
  std::size_t count = 0;
  for (int n = 1; n <= degree; ++n) count += algebra.words(n).size();
  return count;
}

}  // namespace

HolderFamily HolderFamily::zero(std::shared_ptr<const ShuffleAlgebra> algebra,
                                const DyadicGrid& grid, double alpha) {
  HolderFamily f{std::move(algebra), grid, alpha, {}};
  for (const Word& h : f.algebra->lyndon_words_up_to(std::min(f.level(), f.algebra->truncation())))
    f.components.emplace(h, Grid1Fn(grid));
  return f;
}

void HolderFamily::validate() const {
  if (!algebra) throw std::invalid_argument("Hoelder family has no algebra");
  const int n = level();
  if (n > algebra->truncation())
    throw TruncationExceeded("alpha = " + std::to_string(alpha) + " needs level " +
                             std::to_string(n) + " but the algebra stops at " +
                             std::to_string(algebra->truncation()));
  const std::vector<Word> lyndon = algebra->lyndon_words_up_to(n);
  if (components.size() != lyndon.size())
    throw std::invalid_argument("expected " + std::to_string(lyndon.size()) +
                                " components, got " + std::to_string(components.size()));
  for (const Word& h : lyndon) {
    const auto it = components.find(h);
    if (it == components.end())
      throw std::invalid_argument("missing component for Lyndon word " + h.to_string());
    if (!(it->second.grid() == grid))
      throw LevelMismatch("component " + h.to_string() + " lives on another grid");
    if (it->second[0] != 0.0)
      throw std::invalid_argument("component " + h.to_string() + " does not vanish at 0");
  }
}

HolderFamily operator+(const HolderFamily& a, const HolderFamily& b) {
  return combine(a, b, [](const Grid1Fn& x, const Grid1Fn& y) { return x + y; });
}

HolderFamily operator-(const HolderFamily& a, const HolderFamily& b) {
  return combine(a, b, [](const Grid1Fn& x, const Grid1Fn& y) { return x - y; });
}

HolderFamily operator*(double factor, const HolderFamily& a) {
  HolderFamily out{a.algebra, a.grid, a.alpha, {}};
  for (const auto& [h, f] : a.components) out.components.emplace(h, factor * f);
  return out;
}

RoughPathGrid::RoughPathGrid(std::shared_ptr<const ShuffleAlgebra> algebra, DyadicGrid grid,
                             double alpha, int stored_level, std::vector<Grid2Fn> values)
    : algebra_(std::move(algebra)),
      grid_(grid),
      alpha_(alpha),
      stored_level_(stored_level),
      values_(std::move(values)) {
  if (!algebra_) throw std::invalid_argument("rough path has no algebra");
  truncation_level(alpha_);
  if (stored_level_ < 1 || stored_level_ > algebra_->truncation())
    throw TruncationExceeded("stored level " + std::to_string(stored_level_) +
                             " outside the algebra's range 1.." +
                             std::to_string(algebra_->truncation()));
  if (values_.size() != words_up_to(*algebra_, stored_level_))
    throw std::invalid_argument("rough path needs one table per word of degree <= " +
                                std::to_string(stored_level_));
  for (const Grid2Fn& v : values_)
    if (!(v.grid() == grid_)) throw LevelMismatch("rough path component on another grid");
}

const Grid2Fn& RoughPathGrid::values(const Word& w) const {
  if (w.degree() > stored_level_)
    throw TruncationExceeded("word " + w.to_string() + " is above the stored level " +
                             std::to_string(stored_level_));
  return values_[algebra_->id(w)];
}

double RoughPathGrid::scale() const {
  double s = 0.0;
  for (const Grid2Fn& v : values_) s = std::max(s, v.sup_abs());
  return s;
}

double chen_defect(const RoughPathGrid& x, const Word& w, std::size_t s, std::size_t u,
                   std::size_t t) {
  const Grid2Fn& xw = x.values(w);
  double defect = xw(s, t) - xw(s, u) - xw(u, t);
  for (const auto& [a, b] : x.algebra()->reduced_coproduct_ids(x.algebra()->id(w)))
    defect -= x.values(a)(s, u) * x.values(b)(u, t);
  return defect;
}

ChenDefectMax max_chen_defect(const RoughPathGrid& x) {
  const ShuffleAlgebra& algebra = *x.algebra();
  const DyadicGrid& grid = x.grid();
  const std::size_t n = grid.size();
  const std::size_t stride =
      grid.level() > kFullTripleLevel ? std::size_t{1} << (grid.level() - kFullTripleLevel) : 1;
  ChenDefectMax best;
  auto consider = [&](double d, std::size_t id, std::size_t s, std::size_t u, std::size_t t) {
    if (std::abs(d) > best.value) best = {std::abs(d), algebra.word(id), s, u, t};
  };

  for (std::size_t id = 0; id < x.word_count(); ++id) {
    const Grid2Fn& xw = x.values(id);
    const auto& cop = algebra.reduced_coproduct_ids(id);
    for (std::size_t s = 0; s < n; s += stride) {
      const auto row_s = xw.row(s);
      for (std::size_t u = 0; u < n; u += stride) {
        const auto row_u = xw.row(u);
        const double su = row_s[u];
        for (std::size_t t = 0; t < n; t += stride) {
          double d = row_s[t] - su - row_u[t];
          for (const auto& [a, b] : cop) d -= x.values(a)(s, u) * x.values(b)(u, t);
          if (std::abs(d) > best.value) consider(d, id, s, u, t);
        }
      }
    }
  }
  if (stride > 1) {
    SplitMix64 rng(0xc4e11ULL);
    for (std::size_t i = 0; i < (std::size_t{1} << 20); ++i) {
      const std::size_t s = rng.below(n), u = rng.below(n), t = rng.below(n);
      for (std::size_t id = 0; id < x.word_count(); ++id)
        consider(chen_defect(x, algebra.word(id), s, u, t), id, s, u, t);
    }
  }
  return best;
}

ShuffleDefectMax max_shuffle_defect(const RoughPathGrid& x) {
  const ShuffleAlgebra& algebra = *x.algebra();
  const std::size_t pairs = x.grid().size() * x.grid().size();
  ShuffleDefectMax best;
  for (std::size_t i = 0; i < x.word_count(); ++i) {
    for (std::size_t j = i; j < x.word_count(); ++j) {
      const Word& u = algebra.word(i);
      const Word& v = algebra.word(j);
      if (u.degree() + v.degree() > x.stored_level()) continue;
      std::vector<std::pair<std::span<const double>, double>> terms;
      for (const auto& [w, c] : algebra.shuffle_product(u, v))
        terms.emplace_back(x.values(w).values(), c.convert_to<double>());
      const auto xu = x.values(i).values();
      const auto xv = x.values(j).values();
      for (std::size_t p = 0; p < pairs; ++p) {
        double d = -xu[p] * xv[p];
        for (const auto& [xw, c] : terms) d += c * xw[p];
        if (std::abs(d) > best.value) {
          const std::size_t side = x.grid().size();
          best = {std::abs(d), u, v, p / side, p % side};
        }
      }
    }
  }
  return best;
}

RoughPathGrid extend(const HolderFamily& f) {
  f.validate();
  check_reciprocal(f.alpha);
  const ShuffleAlgebra& algebra = *f.algebra;
  const int level = f.level();
  std::vector<std::optional<Grid2Fn>> values(words_up_to(algebra, level));

  for (const Word& letter : algebra.words(1))
    values[algebra.id(letter)] = delta1(f.components.at(letter));
  for (int n = 2; n <= level; ++n) {
    const double gamma = f.alpha * n;
    build_degree(algebra, f.grid, n, values, [&](const Word& h, const Grid2Fn& source) {
      const DyadicSewResult sewn = sew_low(source, gamma);
      return -sewn.remainder + delta1(f.components.at(h));
    });
  }
  return {f.algebra, f.grid, f.alpha, level, unwrap(std::move(values))};
}

HolderFamily project(const RoughPathGrid& x) {
  HolderFamily f{x.algebra(), x.grid(), x.alpha(), {}};
  for (const Word& h : x.algebra()->lyndon_words_up_to(x.level()))
    f.components.emplace(h, integrate(x.values(h), x.alpha() * h.degree()));
  return f;
}

RoughPathGrid extend_above_n(const RoughPathGrid& x, int target_level,
                             const RiemannOptions& options) {
  const ShuffleAlgebra& algebra = *x.algebra();
  if (target_level > algebra.truncation())
    throw TruncationExceeded("target level " + std::to_string(target_level) +
                             " exceeds the algebra's truncation " +
                             std::to_string(algebra.truncation()));
  if (target_level <= x.stored_level()) return x;
  if (x.alpha() * (x.stored_level() + 1) <= 1.0)
    throw std::domain_error("levels above the stored one must have alpha n > 1");

  std::vector<std::optional<Grid2Fn>> values(words_up_to(algebra, target_level));
  for (std::size_t id = 0; id < x.word_count(); ++id) values[id] = x.values(id);
  RiemannOptions opts = options;
  opts.output_level.reset();
  for (int n = x.stored_level() + 1; n <= target_level; ++n) {
    const double gamma = x.alpha() * n;
    build_degree(algebra, x.grid(), n, values, [&](const Word&, const Grid2Fn& source) {
      return -sew_high(source, gamma, opts).remainder;
    });
  }
  return {x.algebra(), x.grid(), x.alpha(), target_level, unwrap(std::move(values))};
}

RoughPathGrid act(const HolderFamily& g, const RoughPathGrid& x) { return extend(g + project(x)); }

double rp_distance(const RoughPathGrid& x, const RoughPathGrid& y) {
  if (!(x.grid() == y.grid())) throw LevelMismatch("rough paths live on different grids");
  double total = 0.0;
  for (const Word& h : x.algebra()->lyndon_words_up_to(x.level()))
    total += norm_c2(x.values(h) - y.values(h), x.alpha() * h.degree());
  return total;
}

double family_distance(const HolderFamily& f, const HolderFamily& g) {
  check_compatible(f, g);
  double total = 0.0;
  for (const auto& [h, fh] : f.components)
    total += norm_c1_holder(fh - g.components.at(h), f.alpha * h.degree());
  return total;
}

HolderReport holder_report(const RoughPathGrid& x) {
  HolderReport rep;
  rep.alpha = x.alpha();
  rep.level = x.level();
  rep.stored_level = x.stored_level();
  rep.grid_level = x.grid().level();
  for (std::size_t id = 0; id < x.word_count(); ++id) {
    const Word& w = x.algebra()->word(id);
    const double exponent = x.alpha() * w.degree();
    rep.norms.push_back({w, exponent, norm_c2(x.values(id), exponent)});
  }
  rep.chen = max_chen_defect(x);
  rep.shuffle = max_shuffle_defect(x);
  rep.scale = x.scale();
  return rep;
}

}  // namespace roughsew
