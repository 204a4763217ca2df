#pragma once

#include <optional>
#include <variant>
#include <vector>

namespace roughsew {

/// Smallest admissible k0 used when none is given: floor(1/gamma) + 1, but
/// never below 2 (k0 = 1 makes the second series diverge for gamma >= 1).
int default_k0(double gamma);

/// A modulus V on [0, T] together with the series Vbar_(k0) that bounds the
/// remainder of the dyadic sewing construction.
///
///   Vbar(T 2^-r) = (k0 + 1) sum_m 2^(m+1) V(T 2^-(r + m k0))
///                + sum_m sum_{k=0..k0} sum_{l=1..r+m k0+k}
///                      2^(m + 1 - r - m k0 - k + l) V(T 2^-(l-1))
///
/// and Vbar(u) = Vbar(T 2^-r) for T 2^-(r+1) < u <= T 2^-r, Vbar(0) = 0.
class ControlFn {
 public:
  /// V(u) = scale * u^gamma.
  struct PowerLaw {
    double gamma;
    double scale = 1.0;
  };
  /// values[j] = V(T 2^-j); must be nonnegative and nonincreasing in j.
  struct Tabulated {
    std::vector<double> values;
  };

  static constexpr int kMaxSeriesTerms = 10000;
  static constexpr double kRelativeTail = 1e-12;

  /// Throws NonConvergent if the series diverges for this k0.
  static ControlFn power_law(double gamma, double horizon, double scale = 1.0,
                             std::optional<int> k0 = std::nullopt);
  static ControlFn tabulated(std::vector<double> values, int k0, double horizon);

  int k0() const { return k0_; }
  double horizon() const { return horizon_; }
  const std::variant<PowerLaw, Tabulated>& kind() const { return kind_; }

  /// V(T 2^-j).
  double at_dyadic_gap(int j) const;

  /// Vbar(T 2^-r), r >= 0.
  double vbar(int r) const;

  /// Step extension of Vbar to u in [0, T].
  double vbar_at(double u) const;

 private:
  ControlFn(std::variant<PowerLaw, Tabulated> kind, int k0, double horizon);

  double vbar_power_law(int r) const;
  double vbar_tabulated(int r) const;

  std::variant<PowerLaw, Tabulated> kind_;
  int k0_;
  double horizon_;
};

}  // namespace roughsew
