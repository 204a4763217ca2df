#include "roughsew/paths.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "roughsew/random.hpp"

namespace roughsew {

namespace {

struct PathGenerator {
  const PathSpec& spec;
  DyadicGrid grid;

  Grid1Fn operator()(const PowerPath& p) const {
    if (!(p.alpha > 0.0)) throw std::invalid_argument("power path needs alpha > 0");
    return Grid1Fn::tabulate(grid, [&](double t) { return std::pow(t, p.alpha); });
  }

  Grid1Fn operator()(const WeierstrassPath& w) const {
    if (!(w.a > 0.0 && w.a < 1.0)) throw std::invalid_argument("Weierstrass path needs 0 < a < 1");
    if (!(w.b > 1.0)) throw std::invalid_argument("Weierstrass path needs b > 1");
    if (spec.declared_alpha && w.a * w.b <= 1.0)
      throw std::invalid_argument(
          "Weierstrass path with a b <= 1 is Lipschitz; it has no Hoelder exponent below 1");
    // Stop once the amplitude is negligible or the frequency is far below the mesh.
    const double max_freq = std::ldexp(1.0, grid.level() + 8);
    std::vector<std::pair<double, double>> terms;
    double amp = 1.0, freq = 1.0;
    while (amp > 1e-17 && freq <= max_freq) {
      terms.emplace_back(amp, freq);
      amp *= w.a;
      freq *= w.b;
    }
    const double horizon = grid.horizon();
    return Grid1Fn::tabulate(grid, [&](double t) {
      double v = 0.0;
      for (const auto& [am, fr] : terms) v += am * std::sin(std::numbers::pi * fr * t / horizon);
      return v;
    });
  }

  Grid1Fn operator()(const MidpointDisplacementPath& m) const {
    if (!(m.alpha > 0.0 && m.alpha <= 1.0))
      throw std::invalid_argument("midpoint displacement needs 0 < alpha <= 1");
    SplitMix64 rng(m.seed);
    const double amplitude = std::pow(grid.horizon(), m.alpha);
    std::vector<double> v(grid.size(), 0.0);
    v[grid.last()] = amplitude * rng.normal();
    for (int n = 1; n <= grid.level(); ++n) {
      const std::size_t half = std::size_t{1} << (grid.level() - n);
      const double scale = amplitude * std::exp2(-m.alpha * n);
      for (std::size_t left = 0; left < grid.last(); left += 2 * half) {
        const std::size_t right = left + 2 * half;
        v[left + half] = 0.5 * (v[left] + v[right]) + scale * rng.normal();
      }
    }
    return {grid, std::move(v)};
  }

  Grid1Fn operator()(const SmoothPolyPath& p) const {
    return Grid1Fn::tabulate(grid, [&](double t) {
      double v = 0.0;
      for (std::size_t i = p.coeffs.size(); i-- > 1;) v = (v + p.coeffs[i]) * t;
      return v;
    });
  }
};

Grid1Fn on_grid(const Grid1Fn& path, const DyadicGrid& grid) {
  if (path.grid() == grid) return path;
  grid.stride_in(path.grid());  // validates nesting
  return path.restricted(grid.level());
}

struct GermGenerator {
  const DyadicGrid& grid;

  Grid2Fn operator()(const CoboundaryGerm& g) const { return delta1(on_grid(g.path, grid)); }

  Grid2Fn operator()(const YoungProductGerm& g) const {
    const Grid1Fn x = on_grid(g.x, grid);
    const Grid1Fn y = on_grid(g.y, grid);
    return Grid2Fn::tabulate_indices(grid, [&](std::size_t j, std::size_t k) {
      return y[j] * (x[k] - x[j]);
    });
  }

  Grid2Fn operator()(const LogGerm&) const {
    return Grid2Fn::tabulate_indices(grid, [&](std::size_t j, std::size_t k) {
      if (j == k) return 0.0;
      const double h = grid.span(j > k ? j - k : k - j);
      return h * std::log(h);
    });
  }

  Grid2Fn operator()(const PowerGerm& g) const {
    if (!(g.gamma > 0.0)) throw std::invalid_argument("power germ needs gamma > 0");
    return Grid2Fn::tabulate_indices(grid, [&](std::size_t j, std::size_t k) {
      if (j == k) return 0.0;
      return g.coeff * std::pow(grid.span(j > k ? j - k : k - j), g.gamma);
    });
  }

  Grid2Fn operator()(const CustomGerm& g) const {
    if (!g.fn) throw std::invalid_argument("custom germ has no function");
    return Grid2Fn::tabulate(grid, g.fn);
  }
};

}  // namespace

Grid1Fn generate_path(const PathSpec& spec) {
  const DyadicGrid grid(spec.horizon, spec.level);
  return std::visit(PathGenerator{spec, grid}, spec.kind);
}

double nominal_holder_exponent(const PathSpec& spec) {
  struct Visitor {
    double operator()(const PowerPath& p) const { return std::min(p.alpha, 1.0); }
    double operator()(const WeierstrassPath& w) const {
      return std::min(1.0, std::log(1.0 / w.a) / std::log(w.b));
    }
    double operator()(const MidpointDisplacementPath& m) const { return m.alpha; }
    double operator()(const SmoothPolyPath&) const { return 1.0; }
  };
  return std::visit(Visitor{}, spec.kind);
}

Grid2Fn generate_germ(const GermSpec& spec, const DyadicGrid& grid) {
  return std::visit(GermGenerator{grid}, spec.kind);
}

}  // namespace roughsew
