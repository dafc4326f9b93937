#pragma once

#include <array>
#include <span>
#include <vector>

namespace hrl {

/// Highest derivative order any functional in the library asks for.
inline constexpr int kMaxDerivative = 4;

/// Values of a function and its first four derivatives at one point.
using Jet = std::array<double, kMaxDerivative + 1>;

/// Compactly supported B-spline profile on (r_min, r_max).
///
/// The breakpoints are simple (strictly increasing), so every basis function
/// B_i lives on [t_i, t_{i+degree+1}] inside the breakpoint range and the
/// spline vanishes at both ends together with its first degree-1 derivatives.
/// Evaluation is exact up to rounding: derivatives come from the
/// Cox-de Boor recursion, never from differencing.
class BSpline {
 public:
  BSpline(std::vector<double> breaks, int degree, std::vector<double> coefficients);

  /// Zero coefficients; useful as a basis carrier.
  static BSpline zeros(std::vector<double> breaks, int degree);

  /// Number of basis functions for `breaks.size()` simple knots.
  static std::size_t basis_size(std::size_t break_count, int degree);

  double r_min() const { return breaks_.front(); }
  double r_max() const { return breaks_.back(); }
  int degree() const { return degree_; }
  std::size_t size() const { return coefficients_.size(); }

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  /// Copy with the coefficient vector replaced (same basis).
  BSpline with_coefficients(std::vector<double> coefficients) const;

  /// Greville abscissa of basis function i (mean of its interior knots).
  double greville(std::size_t i) const;

  double evaluate(double r, int derivative = 0) const;
  Jet jet(double r) const;

  /// Index of the first basis function that can be nonzero at r together
  /// with the values of the degree+1 local basis functions and their
  /// derivatives up to `max_derivative`.  Entries for basis indices outside
  /// [0, size()) are zero.  `out` is laid out [derivative][local index].
  struct LocalBasis {
    long first = 0;
    int degree = 0;
    std::vector<double> values;  // (max_derivative + 1) x (degree + 1)
    double at(int derivative, int local) const { return values[derivative * (degree + 1) + local]; }
  };
  LocalBasis local_basis(double r, int max_derivative) const;

 private:
  long find_span(double r) const;

  std::vector<double> breaks_;
  std::vector<double> knots_;  // breaks padded with `degree` phantom knots per side
  int degree_;
  std::vector<double> coefficients_;
};

}  // namespace hrl
