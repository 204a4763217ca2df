#include "roughsew/sewing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include "roughsew/error.hpp"

namespace roughsew {

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("sewing exponent gamma must be positive");
}

Grid2Fn remainder_of(const Grid2Fn& a, const Grid1Fn& integral) {
  return Grid2Fn::tabulate_indices(a.grid(), [&](std::size_t j, std::size_t k) {
    return a(j, k) - (integral[k] - integral[j]);
  });
}

}  // namespace

DyadicSewResult sew_dyadic(const Grid2Fn& a) {
  const DyadicGrid& grid = a.grid();
  const int levels = grid.level();
  std::vector<double> integral(grid.size(), 0.0);
  std::vector<std::vector<double>> corr(static_cast<std::size_t>(levels) + 1);

  corr[0] = {0.0};
  integral[grid.last()] = a(0, grid.last()) + corr[0][0];

  for (int n = 1; n <= levels; ++n) {
    const std::size_t half = std::size_t{1} << (levels - n);  // cell width at level n
    const std::vector<double>& parent = corr[static_cast<std::size_t>(n - 1)];
    std::vector<double>& cur = corr[static_cast<std::size_t>(n)];
    cur.assign(parent.size() * 2, 0.0);
    for (std::size_t k = 0; k < parent.size(); ++k) {
      const std::size_t left = 2 * k * half;
      const std::size_t mid = left + half;
      const std::size_t right = mid + half;
      const double coherence = a(left, right) - a(left, mid) - a(mid, right);
      cur[2 * k] = 0.5 * parent[k];
      cur[2 * k + 1] = 0.5 * parent[k] + coherence;
      integral[mid] = integral[left] + a(left, mid) + cur[2 * k];
    }
  }

  Grid1Fn i(grid, std::move(integral));
  Grid2Fn r = remainder_of(a, i);
  return {{std::move(i), std::move(r)}, std::move(corr)};
}

DyadicSewResult sew_low(const Grid2Fn& a, double gamma, const std::optional<DyadicGrid>& output) {
  check_gamma(gamma);
  if (gamma > 1.0)
    throw std::domain_error("the dyadic sewing map is used for 0 < gamma <= 1; got " +
                            std::to_string(gamma));
  if (output && !(*output == a.grid()))
    throw LevelMismatch("germ is sampled at level " + std::to_string(a.grid().level()) +
                        " but output level " + std::to_string(output->level()) +
                        " was requested");
  return sew_dyadic(a);
}

RiemannSewResult sew_high(const Grid2Fn& a, double gamma, const RiemannOptions& options) {
  check_gamma(gamma);
  if (!(gamma > 1.0))
    throw std::domain_error("Riemann-sum sewing needs gamma > 1; got " + std::to_string(gamma));
  const DyadicGrid& fine = a.grid();
  const int level = fine.level();
  const int partition = options.partition_level.value_or(level);
  const int out_level = options.output_level.value_or(level);
  if (partition < 0 || partition > level)
    throw LevelMismatch("partition level must lie in [0, " + std::to_string(level) + "]");
  if (out_level < 0 || out_level > level)
    throw LevelMismatch("output level must lie in [0, " + std::to_string(level) + "]");

  // Cumulative sums along the partition cells.
  const std::size_t cell = std::size_t{1} << (level - partition);
  std::vector<double> cumulative((std::size_t{1} << partition) + 1, 0.0);
  for (std::size_t j = 0; j + 1 < cumulative.size(); ++j)
    cumulative[j + 1] = cumulative[j] + a(j * cell, (j + 1) * cell);

  std::vector<double> refinements(static_cast<std::size_t>(partition) + 1, 0.0);
  for (int m = 0; m <= partition; ++m) {
    const std::size_t step = std::size_t{1} << (level - m);
    double sum = 0.0;
    for (std::size_t k = 0; k < fine.last(); k += step) sum += a(k, k + step);
    refinements[static_cast<std::size_t>(m)] = sum;
  }

  if (options.check_convergence && partition > 0) {
    double bound = 0.0;
    if (options.coherence_bound) {
      bound = *options.coherence_bound;
    } else {
      const int coarse = std::min(level, RiemannOptions::kEstimateLevel);
      bound = RiemannOptions::kEstimatedBoundSafety *
              norm_c3(delta2(a.restricted(coarse)), gamma, {.strategy = TripleStrategy::kFull});
    }
    const double slack = kZeroTolerance * std::max(1.0, a.sup_abs());
    const double base = bound * std::pow(fine.horizon(), gamma) * std::exp2(-gamma);
    for (int m = 0; m < partition; ++m) {
      const double step = std::abs(refinements[static_cast<std::size_t>(m) + 1] -
                                   refinements[static_cast<std::size_t>(m)]);
      const double allowed = base * std::exp2((1.0 - gamma) * m) * (1.0 + 1e-9) + slack;
      if (step > allowed) {
        std::ostringstream msg;
        msg << "Riemann sums do not settle: refinement " << m << " -> " << m + 1
            << " moved by " << step << " > " << allowed
            << "; the germ's coherence is weaker than gamma = " << gamma;
        throw NotConverging(msg.str());
      }
    }
  }

  const DyadicGrid out_grid = fine.with_level(out_level);
  const std::size_t out_stride = out_grid.stride_in(fine);
  std::vector<double> integral(out_grid.size(), 0.0);
  for (std::size_t i = 0; i < integral.size(); ++i) {
    const std::size_t k = i * out_stride;
    const std::size_t j = k / cell;
    integral[i] = cumulative[j] + (k % cell != 0 ? a(j * cell, k) : 0.0);
  }
  Grid1Fn i(out_grid, std::move(integral));
  const Grid2Fn a_out = out_level == level ? a : a.restricted(out_level);
  Grid2Fn r = remainder_of(a_out, i);
  return {{std::move(i), std::move(r)}, std::move(refinements)};
}

SewResult sew(const Grid2Fn& a, double gamma) {
  check_gamma(gamma);
  if (gamma <= 1.0) return sew_low(a, gamma);
  return sew_high(a, gamma);
}

Grid1Fn integrate(const Grid2Fn& a, double gamma) { return sew(a, gamma).integral; }

Grid2Fn lambda_unordered(const Grid2Fn& a, double gamma) { return sew(a, gamma).remainder; }

double constant_c(double gamma, double horizon) {
  check_gamma(gamma);
  if (!(horizon > 0.0)) throw std::domain_error("horizon must be positive");
  if (gamma > 1.0) return 1.0 / (std::exp2(gamma) - 2.0);
  if (gamma == 1.0) return 96.0 / std::numbers::ln2 * (1.0 + std::abs(std::log(horizon)));
  const double floor_inv = std::floor(1.0 / gamma);
  const double lead = std::exp2(gamma + 1.0) / (1.0 - std::exp2(1.0 - gamma * (floor_inv + 1.0)));
  const double tail =
      2.0 + floor_inv + 2.0 / ((std::exp2(1.0 - gamma) - 1.0) * (1.0 - std::exp2(-gamma)));
  return lead * tail;
}

double log_weighted_norm(const Grid2Fn& r) {
  const DyadicGrid& grid = r.grid();
  std::vector<double> w(grid.size(), 0.0);
  for (std::size_t d = 1; d < w.size(); ++d) {
    const double h = grid.span(d);
    w[d] = 1.0 / ((1.0 + std::abs(std::log(h))) * h);
  }
  double best = 0.0;
  for (std::size_t j = 0; j < r.side(); ++j) {
    const auto row = r.row(j);
    for (std::size_t k = 0; k < r.side(); ++k)
      if (k != j) best = std::max(best, std::abs(row[k]) * w[j > k ? j - k : k - j]);
  }
  return best;
}

SewingReport make_sewing_report(const Grid2Fn& a, const Grid2Fn& remainder, double gamma,
                                const TripleNormOptions& options, double relative_tolerance) {
  SewingReport rep;
  rep.gamma = gamma;
  rep.grid_level = a.grid().level();
  rep.input_c3_norm = norm_c3(delta2(a), gamma, options);
  rep.output_c2_norm = gamma == 1.0 ? log_weighted_norm(remainder) : norm_c2(remainder, gamma);
  rep.bound_constant = constant_c(gamma, a.grid().horizon()) + 1.0;
  rep.tolerance = relative_tolerance * a.sup_abs();
  rep.bound_satisfied = rep.output_c2_norm <= rep.bound_constant * rep.input_c3_norm + rep.tolerance;
  return rep;
}

}  // namespace roughsew
