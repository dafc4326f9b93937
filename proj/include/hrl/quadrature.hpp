#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hrl {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

struct Panel {
  double left;
  double right;
};

/// Composite Gauss-Legendre rule on a union of panels inside (0, inf).
///
/// Panels are aligned to breakpoints; spans whose endpoint ratio exceeds
/// `max_ratio` are split geometrically so power weights r^gamma stay smooth
/// on every panel.
class QuadratureRule {
 public:
  QuadratureRule(std::vector<Panel> panels, int order);

  static QuadratureRule for_breaks(std::span<const double> breaks, int order = 12,
                                   double max_ratio = 1.5);

  /// Every panel halved.
  QuadratureRule refined() const;

  int order() const { return order_; }
  const std::vector<Panel>& panels() const { return panels_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t panel_count() const { return panels_.size(); }
  double left() const { return panels_.front().left; }
  double right() const { return panels_.back().right; }

 private:
  std::vector<Panel> panels_;
  int order_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Sum in a fixed binary-tree order; the result does not depend on how the
/// terms were produced.
double pairwise_sum(std::span<const double> terms);

/// \int f(r) r^gamma dr over the rule.  Throws if any sample is non-finite,
/// naming the offending panel.
double integrate_radial(const std::function<double(double)>& f, double gamma,
                        const QuadratureRule& rule);

/// Same, from precomputed samples at rule.nodes().
double integrate_radial_samples(std::span<const double> samples, double gamma,
                                const QuadratureRule& rule);

/// \int |g(r)|^p r^gamma dr over the rule.  Panels are cut at sign changes
/// of g seen between samples, so the kinks of |g|^p (odd or fractional p)
/// never sit inside a Gauss panel.  `samples` holds g at rule.nodes().
double integrate_abs_power(const std::function<double(double)>& g, std::span<const double> samples,
                           double p, double gamma, const QuadratureRule& rule);

struct IntegralEstimate {
  double value;
  double error;  // |value(refined) - value|
};
IntegralEstimate integrate_radial_estimate(const std::function<double(double)>& f, double gamma,
                                           const QuadratureRule& rule);

/// Nodes on S^{N-1} for zonal / circle integrands.  For N = 2 the nodes are
/// equispaced angles theta (periodic trapezoid); for N = 3 they are polar
/// angles phi with Gauss-Legendre weights in cos(phi), times 2 pi.
struct SphereRule {
  int dim;
  std::vector<double> angles;
  std::vector<double> weights;
};
SphereRule sphere_rule(int dim, int nodes);

/// \int_{S^{N-1}} h dw for h a function of theta (N=2) or phi (N=3).
double integrate_sphere(const std::function<double(double)>& h, int dim, int nodes = 96);

/// |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2); N = 1 gives 2 (two half-lines).
double sphere_area(int dim);

}  // namespace hrl
