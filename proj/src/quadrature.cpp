#include "hrl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hrl {

GaussRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int n = 1; n < order; ++n) {
        const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int n = 1; n < order; ++n) {
      const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

QuadratureRule::QuadratureRule(std::vector<Panel> panels, int order)
    : panels_(std::move(panels)), order_(order) {
  if (panels_.empty()) throw std::invalid_argument("QuadratureRule: no panels");
  const auto base = gauss_legendre(order);
  nodes_.reserve(panels_.size() * order);
  weights_.reserve(panels_.size() * order);
  for (std::size_t k = 0; k < panels_.size(); ++k) {
    const auto [lo, hi] = panels_[k];
    if (!(lo >= 0.0) || !(hi > lo))
      throw std::invalid_argument("QuadratureRule: panels must satisfy 0 <= left < right");
    if (k > 0 && panels_[k - 1].right != lo)
      throw std::invalid_argument("QuadratureRule: panels must be contiguous");
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int q = 0; q < order; ++q) {
      nodes_.push_back(mid + half * base.nodes[q]);
      weights_.push_back(half * base.weights[q]);
    }
  }
}

QuadratureRule QuadratureRule::for_breaks(std::span<const double> breaks, int order,
                                          double max_ratio) {
  if (breaks.size() < 2) throw std::invalid_argument("QuadratureRule: need two breakpoints");
  std::vector<Panel> panels;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k], hi = breaks[k + 1];
    const int pieces =
        std::max(1, static_cast<int>(std::ceil(std::log(hi / lo) / std::log(max_ratio) - 1e-12)));
    const double step = std::pow(hi / lo, 1.0 / pieces);
    double left = lo;
    for (int j = 0; j < pieces; ++j) {
      const double right = (j + 1 == pieces) ? hi : left * step;
      panels.push_back({left, right});
      left = right;
    }
  }
  return QuadratureRule(std::move(panels), order);
}

QuadratureRule QuadratureRule::refined() const {
  std::vector<Panel> panels;
  panels.reserve(2 * panels_.size());
  for (const auto& [lo, hi] : panels_) {
    const double mid = 0.5 * (lo + hi);
    panels.push_back({lo, mid});
    panels.push_back({mid, hi});
  }
  return QuadratureRule(std::move(panels), order_);
}

double pairwise_sum(std::span<const double> terms) {
  if (terms.empty()) return 0.0;
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

double integrate_radial_samples(std::span<const double> samples, double gamma,
                                const QuadratureRule& rule) {
  if (samples.size() != rule.size())
    throw std::invalid_argument("integrate_radial_samples: sample count mismatch");
  const auto& x = rule.nodes();
  const auto& w = rule.weights();
  const int order = rule.order();
  const long panels = static_cast<long>(rule.panel_count());
  std::vector<double> partial(panels, 0.0);
  long bad_panel = -1;
#pragma omp parallel for schedule(static) if (panels > 64)
  for (long k = 0; k < panels; ++k) {
    double s = 0.0;
    for (int q = 0; q < order; ++q) {
      const std::size_t i = static_cast<std::size_t>(k) * order + q;
      const double v = samples[i];
      if (!std::isfinite(v)) {
#pragma omp critical(hrl_bad_panel)
        if (bad_panel < 0 || k < bad_panel) bad_panel = k;
      }
      s += w[i] * v * (gamma == 0.0 ? 1.0 : std::pow(x[i], gamma));
    }
    partial[k] = s;
  }
  if (bad_panel >= 0) {
    const auto& pn = rule.panels()[bad_panel];
    std::ostringstream msg;
    msg << "integrate_radial: non-finite integrand on panel " << bad_panel << " [" << pn.left
        << ", " << pn.right << "]";
    throw std::domain_error(msg.str());
  }
  return pairwise_sum(partial);
}

double integrate_radial(const std::function<double(double)>& f, double gamma,
                        const QuadratureRule& rule) {
  std::vector<double> samples(rule.size());
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = f(rule.nodes()[i]);
  return integrate_radial_samples(samples, gamma, rule);
}

namespace {

double bisect_root(const std::function<double(double)>& g, double lo, double glo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double integrate_abs_power(const std::function<double(double)>& g, std::span<const double> samples,
                           double p, double gamma, const QuadratureRule& rule) {
  if (samples.size() != rule.size())
    throw std::invalid_argument("integrate_abs_power: sample count mismatch");
  const bool smooth_power = p == std::floor(p) && std::fmod(p, 2.0) == 0.0;
  std::vector<double> plain(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) plain[i] = std::pow(std::abs(samples[i]), p);
  if (smooth_power) return integrate_radial_samples(plain, gamma, rule);

  const int order = rule.order();
  const auto base = gauss_legendre(order);
  const long panels = static_cast<long>(rule.panel_count());
  std::vector<double> partial(panels, 0.0);
#pragma omp parallel for schedule(static) if (panels > 64)
  for (long k = 0; k < panels; ++k) {
    const auto& pn = rule.panels()[k];
    const std::size_t first = static_cast<std::size_t>(k) * order;
    // Sign sequence over left end, nodes, right end.
    std::vector<double> xs{pn.left}, gs{g(pn.left)};
    for (int q = 0; q < order; ++q) {
      xs.push_back(rule.nodes()[first + q]);
      gs.push_back(samples[first + q]);
    }
    xs.push_back(pn.right);
    gs.push_back(g(pn.right));
    std::vector<double> cuts{pn.left};
    for (std::size_t j = 0; j + 1 < xs.size(); ++j)
      if ((gs[j] < 0.0 && gs[j + 1] > 0.0) || (gs[j] > 0.0 && gs[j + 1] < 0.0))
        cuts.push_back(bisect_root(g, xs[j], gs[j], xs[j + 1]));
    cuts.push_back(pn.right);
    double s = 0.0;
    if (cuts.size() == 2) {
      for (int q = 0; q < order; ++q)
        s += rule.weights()[first + q] * plain[first + q] *
             (gamma == 0.0 ? 1.0 : std::pow(rule.nodes()[first + q], gamma));
    } else {
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double mid = 0.5 * (cuts[c] + cuts[c + 1]), half = 0.5 * (cuts[c + 1] - cuts[c]);
        for (int q = 0; q < order; ++q) {
          const double x = mid + half * base.nodes[q];
          s += half * base.weights[q] * std::pow(std::abs(g(x)), p) * (gamma == 0.0 ? 1.0 : std::pow(x, gamma));
        }
      }
    }
    partial[k] = s;
  }
  for (long k = 0; k < panels; ++k)
    if (!std::isfinite(partial[k])) {
      const auto& pn = rule.panels()[k];
      std::ostringstream msg;
      msg << "integrate_abs_power: non-finite integrand on panel " << k << " [" << pn.left << ", "
          << pn.right << "]";
      throw std::domain_error(msg.str());
    }
  return pairwise_sum(partial);
}

IntegralEstimate integrate_radial_estimate(const std::function<double(double)>& f, double gamma,
                                           const QuadratureRule& rule) {
  const double coarse = integrate_radial(f, gamma, rule);
  const double fine = integrate_radial(f, gamma, rule.refined());
  return {fine, std::abs(fine - coarse)};
}

SphereRule sphere_rule(int dim, int nodes) {
  SphereRule rule{dim, {}, {}};
  if (dim == 2) {
    rule.angles.resize(nodes);
    rule.weights.assign(nodes, 2.0 * std::numbers::pi / nodes);
    for (int j = 0; j < nodes; ++j) rule.angles[j] = 2.0 * std::numbers::pi * j / nodes;
    return rule;
  }
  if (dim == 3) {
    const auto gl = gauss_legendre(nodes);
    rule.angles.resize(nodes);
    rule.weights.resize(nodes);
    for (int j = 0; j < nodes; ++j) {
      rule.angles[j] = std::acos(gl.nodes[j]);
      rule.weights[j] = 2.0 * std::numbers::pi * gl.weights[j];
    }
    return rule;
  }
  throw std::invalid_argument("sphere_rule: only N in {2,3} supported");
}

double integrate_sphere(const std::function<double(double)>& h, int dim, int nodes) {
  const auto rule = sphere_rule(dim, nodes);
  std::vector<double> terms(rule.angles.size());
  for (std::size_t j = 0; j < terms.size(); ++j) terms[j] = rule.weights[j] * h(rule.angles[j]);
  return pairwise_sum(terms);
}

double sphere_area(int dim) {
  if (dim < 1) throw std::invalid_argument("sphere_area: N>=1 required");
  if (dim == 1) return 2.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

}  // namespace hrl
