#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hrl/model.hpp"
#include "hrl/quadrature.hpp"

namespace hrl {

/// Last term of the surrogate S(u)^2: (N-1)|u_r|^2 / r^2 (dimensionally
/// consistent) or (N-1)|u_r|^2 / r as printed in the source display.
enum class SurrogateVariant { InverseSquare, AsPrinted };

struct FunctionalOptions {
  int order = 12;         // Gauss points per radial panel
  double max_ratio = 1.5;  // geometric panel split
  int sphere_nodes = 0;   // 0 selects 128 (N=2) / 96 (N=3)
  SurrogateVariant variant = SurrogateVariant::InverseSquare;
};

/// All weighted functionals of one field, each with measure |x|^a dx.
struct FunctionalReport {
  double lhs_grad_quotient = 0.0;  // \int |grad(u/|x|)|^p
  double rhs_lap = 0.0;            // \int |Lap u|^p
  double rhs_hess_exact = 0.0;     // \int |D^2 u|^p
  double rhs_surrogate = 0.0;      // \int S(u)^p
  double radial_part = 0.0;        // \int (r^-2 |r u_r - u|)^p
  double angular_part = 0.0;       // \int r^-2p |grad_S u|^p
  double radial_second = 0.0;      // \int |u_rr|^p
};

/// Pointwise squared quantities in polar coordinates (x = r w).
struct PolarSample {
  double grad_quotient_sq = 0.0;  // |grad(u/|x|)|^2 via the spherical decomposition
  double radial_sq = 0.0;         // r^-4 |r u_r - u|^2
  double angular_sq = 0.0;        // r^-4 |grad_S u|^2
  double laplacian = 0.0;         // Lap u (signed)
  double hess_sq = 0.0;           // exact |D^2 u|^2 from covariant polar components
  double surrogate_sq = 0.0;      // S(u)^2
  double urr = 0.0;               // u_rr
  double mixed_surrogate = 0.0;   // |r^-1 d_r grad_S u|
};
PolarSample polar_sample(const TestField& field, double r, double angle,
                         SurrogateVariant variant = SurrogateVariant::InverseSquare);

/// Precomputed evaluator for fields sharing breakpoints, degree, mode and
/// exponents; only the coefficient vector varies.  This is the hot kernel
/// of the optimizer and the corpus sweeps.
class FieldEvaluator {
 public:
  FieldEvaluator(std::vector<double> breaks, int degree, AngularMode mode, SpaceParams params,
                 FunctionalOptions options = {});
  explicit FieldEvaluator(const TestField& field, FunctionalOptions options = {});

  std::size_t basis_size() const { return basis_size_; }
  const QuadratureRule& rule() const { return rule_; }
  const SpaceParams& params() const { return params_; }
  const AngularMode& mode() const { return mode_; }

  /// OpenMP over radial panels; per-panel partials combined by pairwise sum,
  /// so the result is bitwise independent of the thread count.
  FunctionalReport evaluate(std::span<const double> coefficients) const;

 private:
  void accumulate_panel(std::size_t panel, std::span<const double> coefficients,
                        double* partial) const;

  QuadratureRule rule_;
  int degree_;
  std::size_t basis_size_;
  AngularMode mode_;
  SpaceParams params_;
  FunctionalOptions options_;
  bool radial_;
  double area_;
  SphereRule sphere_;
  std::vector<AngularJet> angular_;
  double abs_y_pow_ = 0.0;  // \int |Y|^p dw
  std::vector<long> first_;       // first basis index per node
  std::vector<double> basis_;     // node-major, [3][degree+1] per node
  std::vector<double> measure_;   // w_i r_i^{N-1+a}
};

/// Serial reference: straightforward double loop over polar_sample, naive
/// accumulation.  Used to check the parallel kernel.
FunctionalReport evaluate_reference(const TestField& field, FunctionalOptions options = {});

FunctionalReport evaluate_report(const TestField& field, FunctionalOptions options = {});

struct LhsParts {
  double lhs = 0.0;
  double radial_part = 0.0;
  double angular_part = 0.0;
};
LhsParts lhs_functional(const TestField& field, FunctionalOptions options = {});
double rhs_laplacian(const TestField& field, FunctionalOptions options = {});
double rhs_hessian_exact(const TestField& field, FunctionalOptions options = {});
double rhs_surrogate(const TestField& field, FunctionalOptions options = {});

/// Largest relative violation of (s+t)^{N/2} <= 2^{N/2-1}(s^{N/2}+t^{N/2})
/// over random s, t >= 0 (0 when none).
double convexity_check(int dim, int samples, std::uint64_t seed);

/// p = 2 Hardy and Rellich terms of a field with weight |x|^a.
struct HardyRellichTerms {
  double hardy = 0.0;    // \int |grad u|^2 / |x|^2
  double rellich = 0.0;  // \int u^2 / |x|^4
};
HardyRellichTerms hardy_rellich_terms(const TestField& field, FunctionalOptions options = {});

struct BlowupReport {
  double R = 0.0;
  double hardy_term = 0.0;
  double rellich_term = 0.0;
  double lap_term = 0.0;            // \int |Lap u|^2
  double grad_quotient = 0.0;       // \int |grad(u/|x|)|^2
  double identity_residual = 0.0;   // |grad_quotient - (hardy - rellich)| / hardy
};
/// N = 2 cancellation identity and blow-up terms for one field (p = 2, a = 0).
BlowupReport remark_blowup_report(const TestField& field, FunctionalOptions options = {});
/// Same for the harmonic-plateau family member with cutoff R.
BlowupReport remark_blowup_report(double R, FunctionalOptions options = {});

}  // namespace hrl
