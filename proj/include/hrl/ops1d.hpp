#pragma once

#include <functional>
#include <vector>

#include "hrl/bspline.hpp"
#include "hrl/model.hpp"
#include "hrl/quadrature.hpp"

namespace hrl {

/// Result of T_{a,b} f(x) = x^{-a} \int_0^x s^b f(s) ds on a quadrature rule
/// that covers supp f.  Beyond the rule, T f(x) = total * x^{-a}; below it,
/// T f = 0.
class TransformedFunction {
 public:
  TransformedFunction(QuadratureRule rule, std::vector<double> values, std::vector<double> prefix,
                      std::function<double(double)> integrand, double total, double a_op);

  const QuadratureRule& rule() const { return rule_; }
  /// Values at rule().nodes().
  const std::vector<double>& values() const { return values_; }
  /// \int_0^inf s^b f(s) ds.
  double total() const { return total_; }
  double a_op() const { return a_op_; }

  /// Evaluation at any x > 0 (partial-panel Gauss rule inside the support).
  double operator()(double x) const;

 private:
  QuadratureRule rule_;
  std::vector<double> values_;
  std::vector<double> prefix_;  // \int up to the left end of each panel
  std::function<double(double)> integrand_;  // s^b f(s)
  double total_;
  double a_op_;
};

/// Prefix accumulation of panel integrals plus one partial-panel rule per
/// node: O(nodes * order) work.
TransformedFunction apply_T(const OneDimConfig& config, const std::function<double(double)>& f,
                            const QuadratureRule& rule);

/// f = d^order/dr^order of a spline.
std::function<double(double)> spline_derivative(const BSpline& spline, int order);

struct BoundCheck {
  double lhs = 0.0;
  double bound = 0.0;  // constant already applied
  double ratio = 0.0;  // lhs / bound, 0 when both vanish
};

/// \int |T f|^p x^alpha dx against (p(a-1)-alpha)^{-1} \int |f|^p x^{alpha-p(a-b-1)} dx.
/// The lhs includes the closed-form tail beyond supp f.  Throws
/// std::invalid_argument when p(a-1) > alpha fails.
BoundCheck prop_bound_check(const OneDimConfig& config, const std::function<double(double)>& f,
                            const QuadratureRule& rule);
BoundCheck prop_bound_check(const OneDimConfig& config, const BSpline& f);

struct IdentityResidual {
  double max_residual = 0.0;
  double scale = 0.0;  // max |u'/x| + |u/x^2| over the nodes
};
/// (u/x)' - T_{2,1}(u'') sampled at every quadrature node.
IdentityResidual identity_check(const BSpline& u);

/// \int |(u/x)'| dx against \int |u''| dx.
BoundCheck cw10_check(const BSpline& u);

struct Corollary22Check {
  BoundCheck bound;
  /// max |direct - T route| / max |direct| over the nodes.
  double route_discrepancy = 0.0;
};
/// d^n/dx^n (u^(k)/x) by Leibniz on the spline against T_{n+1,n}(u^(n+k+1)),
/// bounded by (pn - alpha)^{-1} \int |u^(n+k+1)|^p x^alpha.
Corollary22Check corollary22_check(const BSpline& u, int n, int k, double p, double alpha);

struct HardyQuotient {
  double lhs = 0.0;    // \int r^beta |f|^p
  double rhs = 0.0;    // \int r^(beta+p) |f'|^p
  double ratio = 0.0;  // lhs / rhs
  double sharp = 0.0;  // (p / |beta + 1|)^p
};
HardyQuotient hardy1d_quotient(const BSpline& f, double p, double beta);

/// Default rule for a profile: knot-aligned, order 12.
QuadratureRule default_rule(const BSpline& profile);

}  // namespace hrl
