#include "roughsew/control.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "roughsew/error.hpp"

namespace roughsew {

int default_k0(double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("gamma must be positive");
  const int k0 = static_cast<int>(std::floor(1.0 / gamma)) + 1;
  return k0 < 2 ? 2 : k0;
}

ControlFn::ControlFn(std::variant<PowerLaw, Tabulated> kind, int k0, double horizon)
    : kind_(std::move(kind)), k0_(k0), horizon_(horizon) {}

ControlFn ControlFn::power_law(double gamma, double horizon, double scale,
                               std::optional<int> k0) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("power-law exponent must be positive");
  if (!(scale >= 0.0)) throw std::domain_error("power-law scale must be nonnegative");
  if (!(horizon > 0.0)) throw std::domain_error("horizon must be positive");
  const int k = k0.value_or(default_k0(gamma));
  // The first series needs k0 * gamma > 1, the second additionally k0 > 1.
  if (k < 2 || !(k * gamma > 1.0))
    throw NonConvergent("Vbar series diverges for V(u) = u^" + std::to_string(gamma) +
                        " with k0 = " + std::to_string(k) +
                        "; need k0 > max(1, 1/gamma)");
  return {PowerLaw{gamma, scale}, k, horizon};
}

ControlFn ControlFn::tabulated(std::vector<double> values, int k0, double horizon) {
  if (k0 < 1) throw std::domain_error("k0 must be a positive integer");
  if (!(horizon > 0.0)) throw std::domain_error("horizon must be positive");
  if (values.empty()) throw std::domain_error("tabulated modulus needs at least one value");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!(values[j] >= 0.0) || !std::isfinite(values[j]))
      throw std::domain_error("tabulated modulus must be finite and nonnegative");
    if (j > 0 && values[j] > values[j - 1])
      throw std::domain_error("tabulated modulus must be increasing in the gap (entry " +
                              std::to_string(j) + ")");
  }
  return {Tabulated{std::move(values)}, k0, horizon};
}

double ControlFn::at_dyadic_gap(int j) const {
  if (j < 0) throw std::domain_error("dyadic gap index must be nonnegative");
  if (const auto* p = std::get_if<PowerLaw>(&kind_))
    return p->scale * std::pow(std::ldexp(horizon_, -j), p->gamma);
  const auto& v = std::get<Tabulated>(kind_).values;
  if (static_cast<std::size_t>(j) < v.size()) return v[static_cast<std::size_t>(j)];
  // Nonincreasing and nonnegative: a trailing zero stays zero.
  if (v.back() == 0.0) return 0.0;
  throw NonConvergent("tabulated modulus has no value for gap T 2^-" + std::to_string(j) +
                      "; extend the table");
}

double ControlFn::vbar(int r) const {
  if (r < 0) throw std::domain_error("Vbar is indexed by r >= 0");
  if (std::holds_alternative<PowerLaw>(kind_)) return vbar_power_law(r);
  return vbar_tabulated(r);
}

double ControlFn::vbar_power_law(int r) const {
  const auto& p = std::get<PowerLaw>(kind_);
  const double g = p.gamma;
  const double k0 = k0_;
  const double c0 = p.scale * std::pow(horizon_, g);
  if (c0 == 0.0) return 0.0;

  const double first =
      2.0 * (k0 + 1.0) * c0 * std::exp2(-r * g) / (1.0 - std::exp2(1.0 - k0 * g));

  double second = 0.0;
  if (g == 1.0) {
    // Inner sum over l is L 2^-L; the m-sum is arithmetico-geometric.
    const double y = std::exp2(1.0 - k0);
    for (int k = 0; k <= k0_; ++k) {
      const double c = r + k;
      second += std::exp2(1.0 - c) * (c / (1.0 - y) + k0 * y / ((1.0 - y) * (1.0 - y)));
    }
    second *= 2.0 * c0;
  } else {
    const double q = std::exp2(1.0 - g);
    const double pre = c0 * std::exp2(g) * q / (q - 1.0);
    const double geo_g = 1.0 - std::exp2(1.0 - g * k0);
    const double geo_1 = 1.0 - std::exp2(1.0 - k0);
    for (int k = 0; k <= k0_; ++k)
      second += std::exp2(1.0 - g * (r + k)) / geo_g - std::exp2(1.0 - (r + k)) / geo_1;
    second *= pre;
  }
  return first + second;
}

double ControlFn::vbar_tabulated(int r) const {
  // partial[L] = sum_{l=1..L} 2^(l-L) V(T 2^-(l-1)), built incrementally.
  std::vector<double> partial{0.0};
  auto partial_at = [&](int L) {
    while (static_cast<int>(partial.size()) <= L) {
      const int next = static_cast<int>(partial.size());
      partial.push_back(0.5 * partial.back() + at_dyadic_gap(next - 1));
    }
    return partial[static_cast<std::size_t>(L)];
  };

  double sum = 0.0;
  for (int m = 0; m < kMaxSeriesTerms; ++m) {
    const int base = r + m * k0_;
    double bracket = (k0_ + 1.0) * at_dyadic_gap(base);
    for (int k = 0; k <= k0_; ++k) bracket += partial_at(base + k);
    const double term = std::ldexp(bracket, m + 1);
    if (!std::isfinite(term))
      throw NonConvergent("Vbar series overflowed at m = " + std::to_string(m));
    sum += term;
    if (term <= kRelativeTail * sum) return sum;
  }
  throw NonConvergent("Vbar series did not settle within " +
                      std::to_string(kMaxSeriesTerms) + " terms");
}

double ControlFn::vbar_at(double u) const {
  if (u == 0.0) return 0.0;
  if (!(u > 0.0) || u > horizon_)
    throw std::domain_error("Vbar is defined on [0, T]");
  int r = 0;
  while (std::ldexp(horizon_, -(r + 1)) >= u) ++r;
  return vbar(r);
}

}  // namespace roughsew
