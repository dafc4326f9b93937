#pragma once

namespace hrl {

/// Angular factor and its intrinsic derivatives at one point of S^{N-1}.
///
/// All quantities are components in the orthonormal frame of the sphere:
///   grad     - the single nonzero component of the intrinsic gradient
///              (dY/dtheta on S^1, dY/dphi for zonal modes on S^2),
///   hess_tt  - second covariant derivative along that direction,
///   hess_cc  - azimuthal diagonal entry cot(phi) dY/dphi (zero on S^1).
/// Off-diagonal Hessian entries vanish for the modes implemented here.
struct AngularJet {
  double value = 0.0;
  double grad = 0.0;
  double hess_tt = 0.0;
  double hess_cc = 0.0;

  double grad_norm_sq() const { return grad * grad; }
  double hess_norm_sq() const { return hess_tt * hess_tt + hess_cc * hess_cc; }
};

/// Spherical-harmonic-like mode: cos(l theta) on S^1, P_l(cos phi) on S^2.
class AngularMode {
 public:
  AngularMode(int ell, int dim);

  /// ell = 0; used for radial fields of any dimension.
  static AngularMode constant(int dim);

  int ell() const { return ell_; }
  int dim() const { return dim_; }
  /// Laplace-Beltrami eigenvalue ell (ell + N - 2).
  double lambda() const { return lambda_; }
  /// (integral of Y^2 over the sphere)^(1/2), closed form.
  double normalization() const { return normalization_; }

  /// `angle` is theta for N = 2 and the polar angle phi for N = 3.
  AngularJet at(double angle) const;

 private:
  int ell_;
  int dim_;
  double lambda_;
  double normalization_;
};

/// P_l(x), P_l'(x), P_l''(x) by the three-term recurrences.
struct LegendreTriple {
  double p, dp, d2p;
};
LegendreTriple legendre(int ell, double x);

}  // namespace hrl
