#include "hrl/ops1d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace hrl {

QuadratureRule default_rule(const BSpline& profile) {
  return QuadratureRule::for_breaks(profile.breaks(), 12, 1.5);
}

std::function<double(double)> spline_derivative(const BSpline& spline, int order) {
  return [&spline, order](double r) { return spline.evaluate(r, order); };
}

TransformedFunction::TransformedFunction(QuadratureRule rule, std::vector<double> values,
                                         std::vector<double> prefix,
                                         std::function<double(double)> integrand, double total,
                                         double a_op)
    : rule_(std::move(rule)),
      values_(std::move(values)),
      prefix_(std::move(prefix)),
      integrand_(std::move(integrand)),
      total_(total),
      a_op_(a_op) {}

namespace {

// \int_lo^hi g(s) ds with a Gauss rule of the given order.
double gauss_segment(const std::function<double(double)>& g, double lo, double hi,
                     const GaussRule& base) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double s = 0.0;
  for (std::size_t q = 0; q < base.nodes.size(); ++q) s += base.weights[q] * g(mid + half * base.nodes[q]);
  return half * s;
}

}  // namespace

double TransformedFunction::operator()(double x) const {
  if (x <= rule_.left()) return 0.0;
  if (x >= rule_.right()) return total_ * std::pow(x, -a_op_);
  const auto& panels = rule_.panels();
  const auto it = std::upper_bound(panels.begin(), panels.end(), x,
                                   [](double v, const Panel& p) { return v < p.right; });
  const auto k = static_cast<std::size_t>(it - panels.begin());
  const auto base = gauss_legendre(rule_.order());
  const double partial = gauss_segment(integrand_, panels[k].left, x, base);
  return (prefix_[k] + partial) * std::pow(x, -a_op_);
}

TransformedFunction apply_T(const OneDimConfig& config, const std::function<double(double)>& f,
                            const QuadratureRule& rule) {
  const double b = config.b_op;
  auto integrand = [f, b](double s) { return std::pow(s, b) * f(s); };
  const auto base = gauss_legendre(rule.order());
  const auto& panels = rule.panels();
  const std::size_t np = panels.size();
  const int order = rule.order();

  std::vector<double> panel_integral(np);
  for (std::size_t k = 0; k < np; ++k)
    panel_integral[k] = gauss_segment(integrand, panels[k].left, panels[k].right, base);
  std::vector<double> prefix(np + 1, 0.0);
  for (std::size_t k = 0; k < np; ++k) prefix[k + 1] = prefix[k] + panel_integral[k];

  std::vector<double> values(rule.size());
  const auto& x = rule.nodes();
#pragma omp parallel for schedule(static) if (np > 64)
  for (std::size_t k = 0; k < np; ++k) {
    for (int q = 0; q < order; ++q) {
      const std::size_t i = k * order + q;
      const double partial = gauss_segment(integrand, panels[k].left, x[i], base);
      values[i] = (prefix[k] + partial) * std::pow(x[i], -config.a_op);
    }
  }
  const double total = prefix[np];
  prefix.pop_back();
  return TransformedFunction(rule, std::move(values), std::move(prefix), std::move(integrand),
                             total, config.a_op);
}

BoundCheck prop_bound_check(const OneDimConfig& config, const std::function<double(double)>& f,
                            const QuadratureRule& rule) {
  if (auto violation = validate(config)) throw std::invalid_argument("prop_bound_check: " + *violation);
  const double p = config.p, a = config.a_op, b = config.b_op, alpha = config.alpha;
  const auto Tf = apply_T(config, f, rule);

  std::vector<double> f_samples(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) f_samples[i] = f(rule.nodes()[i]);
  double lhs = integrate_abs_power(std::cref(Tf), Tf.values(), p, alpha, rule);
  // \int_R^inf |I|^p x^{alpha - a p} dx, convergent because a p - alpha - 1 > p - 1 >= 0.
  const double tail_exp = alpha - a * p + 1.0;
  lhs += std::pow(std::abs(Tf.total()), p) * std::pow(rule.right(), tail_exp) / (-tail_exp);

  const double constant = 1.0 / (p * (a - 1.0) - alpha);
  const double bound = constant * integrate_abs_power(f, f_samples, p, alpha - p * (a - b - 1.0), rule);
  return {lhs, bound, bound > 0.0 ? lhs / bound : 0.0};
}

BoundCheck prop_bound_check(const OneDimConfig& config, const BSpline& f) {
  return prop_bound_check(config, spline_derivative(f, 0), default_rule(f));
}

IdentityResidual identity_check(const BSpline& u) {
  const auto rule = default_rule(u);
  const auto Tf = apply_T({1.0, 2.0, 1.0, 0.0}, spline_derivative(u, 2), rule);
  IdentityResidual out;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes()[i];
    const double u0 = u.evaluate(x, 0), u1 = u.evaluate(x, 1);
    const double direct = u1 / x - u0 / (x * x);
    out.max_residual = std::max(out.max_residual, std::abs(direct - Tf.values()[i]));
    out.scale = std::max(out.scale, std::abs(u1 / x) + std::abs(u0 / (x * x)));
  }
  // Beyond the support both sides vanish; T's tail is \int s u'' ds = 0.
  out.max_residual = std::max(out.max_residual, std::abs(Tf.total()) / (rule.right() * rule.right()));
  return out;
}

BoundCheck cw10_check(const BSpline& u) {
  const auto rule = default_rule(u);
  std::vector<double> lhs(rule.size()), rhs(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes()[i];
    const auto j = u.jet(x);
    lhs[i] = j[1] / x - j[0] / (x * x);
    rhs[i] = j[2];
  }
  const auto quotient_slope = [&u](double x) { return u.evaluate(x, 1) / x - u.evaluate(x) / (x * x); };
  const double l = integrate_abs_power(quotient_slope, lhs, 1.0, 0.0, rule);
  const double r = integrate_abs_power(spline_derivative(u, 2), rhs, 1.0, 0.0, rule);
  return {l, r, r > 0.0 ? l / r : 0.0};
}

Corollary22Check corollary22_check(const BSpline& u, int n, int k, double p, double alpha) {
  if (n < 0 || k < 0) throw std::invalid_argument("corollary22_check: n, k >= 0");
  const int top = n + k + 1;
  if (top > kMaxDerivative || top > u.degree())
    throw std::invalid_argument("corollary22_check: derivative order n+k+1 exceeds 4 or the degree");
  if (!(p >= 1.0)) throw std::invalid_argument("corollary22_check: p >= 1 required");
  if (!(p * n > alpha)) throw std::invalid_argument("corollary22_check: pn > alpha required");

  const auto rule = default_rule(u);
  const OneDimConfig cfg{p, n + 1.0, static_cast<double>(n), alpha};
  const auto Tf = apply_T(cfg, spline_derivative(u, top), rule);

  std::vector<double> lhs(rule.size()), rhs(rule.size());
  double max_direct = 0.0, max_gap = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes()[i];
    const auto jet = u.jet(x);
    // Leibniz: sum_j C(n,j) v^{(n-j)} (-1)^j j! x^{-j-1}, v = u^{(k)}.
    double direct = 0.0, binom = 1.0, fact = 1.0;
    for (int j = 0; j <= n; ++j) {
      if (j > 0) {
        binom *= static_cast<double>(n - j + 1) / j;
        fact *= j;
      }
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      direct += binom * jet[k + n - j] * sign * fact * std::pow(x, -j - 1.0);
    }
    max_direct = std::max(max_direct, std::abs(direct));
    max_gap = std::max(max_gap, std::abs(direct - Tf.values()[i]));
    lhs[i] = direct;
    rhs[i] = jet[top];
  }
  Corollary22Check out;
  out.bound.lhs = integrate_abs_power(std::cref(Tf), lhs, p, alpha, rule);
  out.bound.bound = integrate_abs_power(spline_derivative(u, top), rhs, p, alpha, rule) / (p * n - alpha);
  out.bound.ratio = out.bound.bound > 0.0 ? out.bound.lhs / out.bound.bound : 0.0;
  out.route_discrepancy = max_direct > 0.0 ? max_gap / max_direct : max_gap;
  return out;
}

HardyQuotient hardy1d_quotient(const BSpline& f, double p, double beta) {
  if (!(p > 1.0)) throw std::invalid_argument("hardy1d_quotient: p > 1 required");
  if (beta == -1.0) throw std::invalid_argument("hardy1d_quotient: beta = -1 is the critical case");
  const auto rule = default_rule(f);
  std::vector<double> lhs(rule.size()), rhs(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes()[i];
    lhs[i] = f.evaluate(x, 0);
    rhs[i] = f.evaluate(x, 1);
  }
  HardyQuotient out;
  out.lhs = integrate_abs_power(spline_derivative(f, 0), lhs, p, beta, rule);
  out.rhs = integrate_abs_power(spline_derivative(f, 1), rhs, p, beta + p, rule);
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  out.sharp = std::pow(p / std::abs(beta + 1.0), p);
  return out;
}

}  // namespace hrl
