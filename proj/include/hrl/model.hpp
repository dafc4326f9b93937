#pragma once

#include <optional>
#include <span>
#include <string>

#include "hrl/angular.hpp"
#include "hrl/bspline.hpp"

namespace hrl {

/// Dimension, integrability exponent and power-weight exponent |x|^a.
struct SpaceParams {
  int dim = 2;
  double p = 2.0;
  double a = 0.0;

  /// p = N, the critical exponent.
  static SpaceParams critical(int dim, double a = 0.0) { return {dim, static_cast<double>(dim), a}; }
};

/// Parameters of x^{-a} \int_0^x s^b f(s) ds acting on L^p(x^alpha dx).
struct OneDimConfig {
  double p = 1.0;
  double a_op = 2.0;
  double b_op = 1.0;
  double alpha = 0.0;
};

/// Parameter restriction a check runs under.
enum class Restriction {
  PropBound,    // p >= 1, p (a_op - 1) > alpha
  RadialStep,   // a < 1
  AngularStep,  // a != N (beta = -N + a - 1 != -1)
  CZRange,      // a > -N
};

/// nullopt when the restriction holds, otherwise the failed condition.
std::optional<std::string> validate(const SpaceParams& params, Restriction context);
std::optional<std::string> validate(const OneDimConfig& config);

enum class FieldKind { Radial, Separable };

/// u(x) = g(|x|) Y(x/|x|) with a spline radial factor.  Radial fields use the
/// constant mode and are allowed in every dimension; separable fields only
/// for N in {2, 3}.
class TestField {
 public:
  TestField(FieldKind kind, BSpline profile, AngularMode mode, SpaceParams params);

  FieldKind kind() const { return kind_; }
  const BSpline& profile() const { return profile_; }
  const AngularMode& mode() const { return mode_; }
  const SpaceParams& params() const { return params_; }
  int dim() const { return params_.dim; }

  /// Same profile and mode, different exponents (dimension must match).
  TestField with_params(SpaceParams params) const;
  TestField with_profile(BSpline profile) const;

  /// Point value at a Cartesian point x in R^N (x.size() == N).
  /// For N = 2 the angle is atan2(x2, x1); for N = 3 the polar angle is
  /// measured from the x3 axis.
  double value_at(std::span<const double> x) const;

 private:
  FieldKind kind_;
  BSpline profile_;
  AngularMode mode_;
  SpaceParams params_;
};

/// Build a field, enforcing the representation invariants: r_min > 0,
/// separable fields only for N in {2,3}, mode dimension matching params.
TestField make_field(FieldKind kind, BSpline profile, int ell, SpaceParams params);

}  // namespace hrl
