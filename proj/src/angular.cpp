#include "hrl/angular.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hrl {

LegendreTriple legendre(int ell, double x) {
  if (ell == 0) return {1.0, 0.0, 0.0};
  double p0 = 1.0, p1 = x;
  double d0 = 0.0, d1 = 1.0;
  double s0 = 0.0, s1 = 0.0;
  for (int n = 1; n < ell; ++n) {
    const double p2 = ((2 * n + 1) * x * p1 - n * p0) / (n + 1);
    const double d2 = d0 + (2 * n + 1) * p1;
    const double s2 = s0 + (2 * n + 1) * d1;
    p0 = p1, p1 = p2;
    d0 = d1, d1 = d2;
    s0 = s1, s1 = s2;
  }
  return {p1, d1, s1};
}

AngularMode::AngularMode(int ell, int dim) : ell_(ell), dim_(dim) {
  if (ell < 0) throw std::invalid_argument("AngularMode: ell must be >= 0");
  if (dim < 1) throw std::invalid_argument("AngularMode: dimension must be >= 1");
  if (ell > 0 && dim != 2 && dim != 3)
    throw std::invalid_argument("AngularMode: non-constant modes exist only for N in {2,3}");
  lambda_ = static_cast<double>(ell) * static_cast<double>(ell + dim - 2);
  constexpr double pi = std::numbers::pi;
  if (dim == 2) {
    normalization_ = std::sqrt(ell == 0 ? 2.0 * pi : pi);
  } else if (dim == 3) {
    normalization_ = std::sqrt(4.0 * pi / (2 * ell + 1));
  } else {
    // Constant mode: |S^{N-1}|^(1/2).
    const double area = dim == 1 ? 2.0
                                 : 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim);
    normalization_ = std::sqrt(area);
  }
}

AngularMode AngularMode::constant(int dim) { return AngularMode(0, dim); }

AngularJet AngularMode::at(double angle) const {
  if (ell_ == 0) return {1.0, 0.0, 0.0, 0.0};
  if (dim_ == 2) {
    const double l = ell_;
    const double c = std::cos(l * angle), s = std::sin(l * angle);
    return {c, -l * s, -l * l * c, 0.0};
  }
  const double x = std::cos(angle);
  const double sin_sq = 1.0 - x * x;
  const auto leg = legendre(ell_, x);
  AngularJet jet;
  jet.value = leg.p;
  jet.grad = -std::sin(angle) * leg.dp;
  jet.hess_tt = -x * leg.dp + sin_sq * leg.d2p;
  jet.hess_cc = -x * leg.dp;
  return jet;
}

}  // namespace hrl
