#include "hrl/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hrl/corpus.hpp"
#include "hrl/rng.hpp"

namespace hrl {

namespace {

constexpr int kQuantities = 7;
enum Slot { kLhs, kLap, kHess, kSurr, kRadial, kAngular, kRadialSecond };

// x^{p/2} for x >= 0 with cheap paths for the exponents used most.
inline double pow_half(double x, double p) {
  if (p == 2.0) return x;
  if (p == 4.0) return x * x;
  if (p == 3.0) return x * std::sqrt(x);
  if (p == 1.0) return std::sqrt(x);
  return std::pow(x, 0.5 * p);
}

int default_sphere_nodes(int dim) { return dim == 2 ? 128 : 96; }

bool is_radial(const TestField& field) {
  return field.kind() == FieldKind::Radial || field.mode().ell() == 0;
}

FunctionalReport from_slots(const double* s) {
  FunctionalReport r;
  r.lhs_grad_quotient = s[kLhs];
  r.rhs_lap = s[kLap];
  r.rhs_hess_exact = s[kHess];
  r.rhs_surrogate = s[kSurr];
  r.radial_part = s[kRadial];
  r.angular_part = s[kAngular];
  r.radial_second = s[kRadialSecond];
  return r;
}

struct RadialJet {
  double g, g1, g2;
};

// Squared polar quantities for g(r) Y(w); `y` is the angular jet.
PolarSample polar_from_jets(const RadialJet& j, const AngularJet& y, double r, int dim,
                            double lambda, SurrogateVariant variant) {
  const double r2 = r * r, r4 = r2 * r2;
  PolarSample s;
  const double shift = r * j.g1 - j.g;
  s.radial_sq = shift * shift * y.value * y.value / r4;
  s.angular_sq = j.g * j.g * y.grad_norm_sq() / r4;
  s.grad_quotient_sq = s.radial_sq + s.angular_sq;
  s.laplacian = (j.g2 + (dim - 1) * j.g1 / r - lambda * j.g / r2) * y.value;

  s.urr = j.g2 * y.value;
  const double mixed = (j.g1 / r - j.g / r2) * y.grad;
  const double t_tt = j.g1 / r * y.value + j.g / r2 * y.hess_tt;
  double hess = s.urr * s.urr + 2.0 * mixed * mixed + t_tt * t_tt;
  if (dim == 3) {
    const double t_cc = j.g1 / r * y.value + j.g / r2 * y.hess_cc;
    hess += t_cc * t_cc;
  } else if (dim > 3) {
    // Radial fields only: the N-1 tangential diagonal entries equal g'/r.
    hess += (dim - 2) * (j.g1 / r) * (j.g1 / r);
  } else if (dim == 1) {
    hess = s.urr * s.urr;
  }
  s.hess_sq = hess;

  s.mixed_surrogate = std::abs(j.g1 * y.grad / r);
  const double last = variant == SurrogateVariant::InverseSquare ? 1.0 / r2 : 1.0 / r;
  s.surrogate_sq = s.urr * s.urr + 2.0 * s.mixed_surrogate * s.mixed_surrogate +
                   j.g * j.g * y.hess_norm_sq() / r4 +
                   (dim - 1) * last * (j.g1 * y.value) * (j.g1 * y.value);
  return s;
}

}  // namespace

PolarSample polar_sample(const TestField& field, double r, double angle, SurrogateVariant variant) {
  const auto jet = field.profile().jet(r);
  const RadialJet rj{jet[0], jet[1], jet[2]};
  const AngularJet y = is_radial(field) ? AngularJet{1.0, 0.0, 0.0, 0.0} : field.mode().at(angle);
  return polar_from_jets(rj, y, r, field.dim(), field.mode().lambda(), variant);
}

FieldEvaluator::FieldEvaluator(std::vector<double> breaks, int degree, AngularMode mode,
                               SpaceParams params, FunctionalOptions options)
    : rule_(QuadratureRule::for_breaks(breaks, options.order, options.max_ratio)),
      degree_(degree),
      basis_size_(BSpline::basis_size(breaks.size(), degree)),
      mode_(mode),
      params_(params),
      options_(options),
      radial_(mode.ell() == 0),
      area_(sphere_area(params.dim)),
      sphere_{params.dim, {}, {}} {
  if (mode.dim() != params.dim) throw std::invalid_argument("FieldEvaluator: mode dimension mismatch");
  if (!radial_) {
    const int nodes = options.sphere_nodes > 0 ? options.sphere_nodes : default_sphere_nodes(params.dim);
    sphere_ = sphere_rule(params.dim, nodes);
    angular_.reserve(sphere_.angles.size());
    std::vector<double> terms;
    for (std::size_t j = 0; j < sphere_.angles.size(); ++j) {
      angular_.push_back(mode.at(sphere_.angles[j]));
      terms.push_back(sphere_.weights[j] * std::pow(std::abs(angular_.back().value), params.p));
    }
    abs_y_pow_ = pairwise_sum(terms);
  }

  const auto carrier = BSpline::zeros(std::move(breaks), degree);
  const std::size_t n = rule_.size();
  first_.resize(n);
  basis_.resize(n * 3 * (degree + 1));
  measure_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rule_.nodes()[i];
    const auto local = carrier.local_basis(r, 2);
    first_[i] = local.first;
    std::copy(local.values.begin(), local.values.end(), basis_.begin() + i * 3 * (degree + 1));
    measure_[i] = rule_.weights()[i] * std::pow(r, params.dim - 1.0 + params.a);
  }
}

FieldEvaluator::FieldEvaluator(const TestField& field, FunctionalOptions options)
    : FieldEvaluator(field.profile().breaks(), field.profile().degree(),
                     is_radial(field) ? AngularMode::constant(field.dim()) : field.mode(),
                     field.params(), options) {}

void FieldEvaluator::accumulate_panel(std::size_t panel, std::span<const double> c,
                                      double* partial) const {
  const int order = rule_.order();
  const int width = degree_ + 1;
  const long n = static_cast<long>(basis_size_);
  const double p = params_.p;
  const int dim = params_.dim;
  const double lambda = mode_.lambda();
  std::fill(partial, partial + kQuantities, 0.0);

  for (int q = 0; q < order; ++q) {
    const std::size_t i = panel * order + q;
    const double r = rule_.nodes()[i];
    const double* b = &basis_[i * 3 * width];
    RadialJet j{0.0, 0.0, 0.0};
    for (int l = 0; l < width; ++l) {
      const long idx = first_[i] + l;
      if (idx < 0 || idx >= n) continue;
      j.g += c[idx] * b[l];
      j.g1 += c[idx] * b[width + l];
      j.g2 += c[idx] * b[2 * width + l];
    }
    const double mu = measure_[i];
    if (radial_) {
      const auto s = polar_from_jets(j, AngularJet{1.0, 0.0, 0.0, 0.0}, r, dim, 0.0, options_.variant);
      const double scale = mu * area_;
      partial[kLhs] += scale * pow_half(s.grad_quotient_sq, p);
      partial[kRadial] += scale * pow_half(s.radial_sq, p);
      partial[kLap] += scale * std::pow(std::abs(s.laplacian), p);
      partial[kHess] += scale * pow_half(s.hess_sq, p);
      partial[kSurr] += scale * pow_half(s.surrogate_sq, p);
      partial[kRadialSecond] += scale * std::pow(std::abs(s.urr), p);
      continue;
    }
    const double lg = j.g2 + (dim - 1) * j.g1 / r - lambda * j.g / (r * r);
    partial[kLap] += mu * std::pow(std::abs(lg), p) * abs_y_pow_;
    double acc[kQuantities] = {};
    for (std::size_t a = 0; a < angular_.size(); ++a) {
      const auto s = polar_from_jets(j, angular_[a], r, dim, lambda, options_.variant);
      const double w = sphere_.weights[a];
      acc[kLhs] += w * pow_half(s.grad_quotient_sq, p);
      acc[kRadial] += w * pow_half(s.radial_sq, p);
      acc[kAngular] += w * pow_half(s.angular_sq, p);
      acc[kHess] += w * pow_half(s.hess_sq, p);
      acc[kSurr] += w * pow_half(s.surrogate_sq, p);
      acc[kRadialSecond] += w * std::pow(std::abs(s.urr), p);
    }
    for (int k = 0; k < kQuantities; ++k) {
      if (k != kLap) partial[k] += mu * acc[k];
    }
  }
}

FunctionalReport FieldEvaluator::evaluate(std::span<const double> coefficients) const {
  if (coefficients.size() != basis_size_)
    throw std::invalid_argument("FieldEvaluator::evaluate: coefficient count mismatch");
  const long panels = static_cast<long>(rule_.panel_count());
  std::vector<double> partial(static_cast<std::size_t>(panels) * kQuantities);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < panels; ++k)
    accumulate_panel(static_cast<std::size_t>(k), coefficients, &partial[k * kQuantities]);

  double totals[kQuantities];
  std::vector<double> column(panels);
  for (int q = 0; q < kQuantities; ++q) {
    for (long k = 0; k < panels; ++k) column[k] = partial[k * kQuantities + q];
    totals[q] = pairwise_sum(column);
  }
  return from_slots(totals);
}

FunctionalReport evaluate_reference(const TestField& field, FunctionalOptions options) {
  const auto rule =
      QuadratureRule::for_breaks(field.profile().breaks(), options.order, options.max_ratio);
  const auto& params = field.params();
  const double p = params.p;
  double totals[kQuantities] = {};
  const bool radial = is_radial(field);
  SphereRule sphere{params.dim, {0.0}, {sphere_area(params.dim)}};
  if (!radial) {
    sphere = sphere_rule(params.dim,
                         options.sphere_nodes > 0 ? options.sphere_nodes : default_sphere_nodes(params.dim));
  }
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = rule.nodes()[i];
    const double mu = rule.weights()[i] * std::pow(r, params.dim - 1.0 + params.a);
    for (std::size_t a = 0; a < sphere.angles.size(); ++a) {
      const auto s = polar_sample(field, r, sphere.angles[a], options.variant);
      const double w = mu * sphere.weights[a];
      totals[kLhs] += w * std::pow(s.grad_quotient_sq, 0.5 * p);
      totals[kLap] += w * std::pow(std::abs(s.laplacian), p);
      totals[kHess] += w * std::pow(s.hess_sq, 0.5 * p);
      totals[kSurr] += w * std::pow(s.surrogate_sq, 0.5 * p);
      totals[kRadial] += w * std::pow(s.radial_sq, 0.5 * p);
      totals[kAngular] += w * std::pow(s.angular_sq, 0.5 * p);
      totals[kRadialSecond] += w * std::pow(std::abs(s.urr), p);
    }
  }
  return from_slots(totals);
}

FunctionalReport evaluate_report(const TestField& field, FunctionalOptions options) {
  return FieldEvaluator(field, options).evaluate(field.profile().coefficients());
}

LhsParts lhs_functional(const TestField& field, FunctionalOptions options) {
  const auto r = evaluate_report(field, options);
  return {r.lhs_grad_quotient, r.radial_part, r.angular_part};
}

double rhs_laplacian(const TestField& field, FunctionalOptions options) {
  return evaluate_report(field, options).rhs_lap;
}

double rhs_hessian_exact(const TestField& field, FunctionalOptions options) {
  if (!is_radial(field) && field.dim() != 2 && field.dim() != 3)
    throw std::invalid_argument("rhs_hessian_exact: separable fields need N in {2,3}");
  return evaluate_report(field, options).rhs_hess_exact;
}

double rhs_surrogate(const TestField& field, FunctionalOptions options) {
  if (!is_radial(field) && field.dim() != 2 && field.dim() != 3)
    throw std::invalid_argument("rhs_surrogate: separable fields need N in {2,3}");
  return evaluate_report(field, options).rhs_surrogate;
}

double convexity_check(int dim, int samples, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("convexity_check: N >= 2 required");
  Rng rng(seed);
  const double e = 0.5 * dim;
  const double c = std::pow(2.0, e - 1.0);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    // Log-uniform magnitudes over many decades, with exact zeros and ties mixed in.
    double s = std::exp(rng.uniform(-20.0, 20.0));
    double t = std::exp(rng.uniform(-20.0, 20.0));
    if (k % 17 == 0) t = 0.0;
    if (k % 13 == 0) t = s;
    const double rhs = c * (std::pow(s, e) + std::pow(t, e));
    const double lhs = std::pow(s + t, e);
    if (rhs > 0.0) worst = std::max(worst, (lhs - rhs) / rhs);
  }
  return worst;
}

HardyRellichTerms hardy_rellich_terms(const TestField& field, FunctionalOptions options) {
  const auto& profile = field.profile();
  const auto rule = QuadratureRule::for_breaks(profile.breaks(), options.order, options.max_ratio);
  const bool radial = is_radial(field);
  const int dim = field.dim();
  double c0 = sphere_area(dim), c1 = 0.0;
  if (!radial) {
    const auto& mode = field.mode();
    const int nodes = options.sphere_nodes > 0 ? options.sphere_nodes : default_sphere_nodes(dim);
    c0 = integrate_sphere([&](double t) { const double y = mode.at(t).value; return y * y; }, dim, nodes);
    c1 = integrate_sphere([&](double t) { return mode.at(t).grad_norm_sq(); }, dim, nodes);
  }
  std::vector<double> hardy(rule.size()), rellich(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double r = rule.nodes()[i];
    const auto j = profile.jet(r);
    hardy[i] = j[1] * j[1] * c0 + j[0] * j[0] * c1 / (r * r);
    rellich[i] = j[0] * j[0] * c0;
  }
  const double a = field.params().a;
  return {integrate_radial_samples(hardy, dim - 3.0 + a, rule),
          integrate_radial_samples(rellich, dim - 5.0 + a, rule)};
}

BlowupReport remark_blowup_report(const TestField& field, FunctionalOptions options) {
  if (field.dim() != 2) throw std::invalid_argument("remark_blowup_report: N = 2 only");
  const auto f = field.with_params({2, 2.0, 0.0});
  const auto terms = hardy_rellich_terms(f, options);
  const auto report = evaluate_report(f, options);
  BlowupReport out;
  out.hardy_term = terms.hardy;
  out.rellich_term = terms.rellich;
  out.lap_term = report.rhs_lap;
  out.grad_quotient = report.lhs_grad_quotient;
  const double scale = std::max(terms.hardy, terms.rellich);
  out.identity_residual =
      scale > 0.0 ? std::abs(report.lhs_grad_quotient - (terms.hardy - terms.rellich)) / scale : 0.0;
  return out;
}

BlowupReport remark_blowup_report(double R, FunctionalOptions options) {
  const auto field =
      make_field(FieldKind::Separable, harmonic_plateau_profile(R), 1, SpaceParams{2, 2.0, 0.0});
  auto out = remark_blowup_report(field, options);
  out.R = R;
  return out;
}

}  // namespace hrl
