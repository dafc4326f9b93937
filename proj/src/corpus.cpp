#include "hrl/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hrl {

double plateau_cutoff(double r, double inner, double outer) {
  if (r <= inner) return 0.0;
  if (r >= outer) return 1.0;
  const double t = (r - inner) / (outer - inner);
  const double t5 = t * t * t * t * t;
  return t5 * (126.0 + t * (-420.0 + t * (540.0 + t * (-315.0 + t * 70.0))));
}

std::vector<double> log_breaks(double lo, double hi, double max_ratio) {
  const int pieces =
      std::max(1, static_cast<int>(std::ceil(std::log(hi / lo) / std::log(max_ratio) - 1e-12)));
  std::vector<double> out(pieces + 1);
  const double step = std::log(hi / lo) / pieces;
  for (int k = 0; k <= pieces; ++k) out[k] = lo * std::exp(k * step);
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {

std::vector<double> linear_breaks(double lo, double hi, int pieces) {
  std::vector<double> out(pieces + 1);
  for (int k = 0; k <= pieces; ++k) out[k] = lo + (hi - lo) * k / pieces;
  out.back() = hi;
  return out;
}

// Concatenate break sequences that share endpoints.
std::vector<double> join(std::initializer_list<std::vector<double>> parts) {
  std::vector<double> out;
  for (const auto& part : parts) {
    for (double t : part) {
      if (out.empty() || t > out.back()) out.push_back(t);
    }
  }
  return out;
}

}  // namespace

BSpline ramped_profile(std::vector<double> breaks, int degree, double plateau_lo,
                       double plateau_hi, const std::function<double(double)>& base,
                       const std::function<double(double)>& scale) {
  auto spline = BSpline::zeros(std::move(breaks), degree);
  const auto& t = spline.breaks();
  const std::size_t n = spline.size();

  std::vector<std::size_t> inner, outer;
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i + degree + 1] <= plateau_lo) inner.push_back(i);
    if (t[i] >= plateau_hi) outer.push_back(i);
  }
  std::vector<double> coeffs(n);
  for (std::size_t i = 0; i < n; ++i) coeffs[i] = base(spline.greville(i));
  if (!inner.empty()) {
    const double lo = scale(spline.greville(inner.front()));
    const double hi = scale(spline.greville(inner.back()));
    for (auto i : inner) coeffs[i] *= plateau_cutoff(scale(spline.greville(i)), lo, hi);
  }
  if (!outer.empty()) {
    const double lo = scale(spline.greville(outer.front()));
    const double hi = scale(spline.greville(outer.back()));
    for (auto i : outer) coeffs[i] *= plateau_cutoff(-scale(spline.greville(i)), -hi, -lo);
  }
  return spline.with_coefficients(std::move(coeffs));
}

BSpline harmonic_plateau_profile(double R, int degree) {
  if (!(R > 1.0)) throw std::invalid_argument("harmonic_plateau_profile: R > 1 required");
  constexpr int kRampPieces = 12;
  auto breaks = join({linear_breaks(0.5, 1.0, kRampPieces), log_breaks(1.0, R, 1.5),
                      linear_breaks(R, 2.0 * R, kRampPieces)});
  return ramped_profile(std::move(breaks), degree, 1.0, R, [](double r) { return r; },
                        [](double r) { return r; });
}

BSpline log_plateau_profile(double R, double ramp_factor, int degree) {
  if (!(R > 1.0)) throw std::invalid_argument("log_plateau_profile: R > 1 required");
  if (!(ramp_factor > 0.0)) throw std::invalid_argument("log_plateau_profile: ramp factor > 0");
  const double inner = std::pow(R, -ramp_factor);
  const double outer = std::pow(R, 1.0 + ramp_factor);
  constexpr double kRatio = 1.25;
  auto breaks = join({log_breaks(inner, 1.0, kRatio), log_breaks(1.0, R, kRatio),
                      log_breaks(R, outer, kRatio)});
  return ramped_profile(std::move(breaks), degree, 1.0, R, [](double r) { return r; },
                        [](double r) { return std::log(r); });
}

BSpline near_extremal_hardy_profile(double p, double beta, double r_min, double r_max,
                                    int degree) {
  if (!(r_max > r_min && r_min > 0.0))
    throw std::invalid_argument("near_extremal_hardy_profile: need 0 < r_min < r_max");
  const double s = -(beta + 1.0) / p;
  const double L = std::log(r_max / r_min);
  const double lo = r_min * std::exp(0.25 * L), hi = r_min * std::exp(0.75 * L);
  auto breaks = join({log_breaks(r_min, lo, 1.25), log_breaks(lo, hi, 1.25),
                      log_breaks(hi, r_max, 1.25)});
  return ramped_profile(std::move(breaks), degree, lo, hi,
                        [s](double r) { return std::pow(r, s); },
                        [](double r) { return std::log(r); });
}

BSpline random_profile(Rng& rng, double r_min, double r_max, int knots, int degree,
                       bool nonnegative) {
  const double L = std::log(r_max / r_min);
  const int pieces = knots - 1;
  std::vector<double> breaks(knots);
  for (int k = 0; k < knots; ++k) {
    double s = static_cast<double>(k) / pieces;
    if (k > 0 && k < pieces) s += (rng.uniform() - 0.5) * 0.6 / pieces;
    breaks[k] = r_min * std::exp(s * L);
  }
  breaks.front() = r_min;
  breaks.back() = r_max;
  const auto n = BSpline::basis_size(breaks.size(), degree);
  std::vector<double> coeffs(n);
  for (auto& c : coeffs) c = nonnegative ? rng.uniform() : rng.uniform(-1.0, 1.0);
  return BSpline(std::move(breaks), degree, std::move(coeffs));
}

std::vector<TestField> generate(const CorpusSpec& spec) {
  if (spec.degree < 4) throw std::invalid_argument("generate: degree >= 4 required");
  if (!(spec.r_min > 0.0) || !(spec.r_max > spec.r_min))
    throw std::invalid_argument("generate: need 0 < r_min < r_max");
  const bool gridded =
      spec.family == Family::HarmonicPlateau || spec.family == Family::RellichDegeneracy;
  if (gridded && spec.plateau_R.empty())
    throw std::invalid_argument("generate: plateau families need a non-empty R grid");
  if (!gridded && spec.count == 0) throw std::invalid_argument("generate: count must be > 0");
  if (spec.knots < spec.degree + 3)
    throw std::invalid_argument("generate: knots-per-profile must be >= degree + 3");

  Rng rng(spec.seed);
  std::vector<TestField> out;
  const auto separable = [&](BSpline profile, int ell) {
    if (ell == 0) return make_field(FieldKind::Radial, std::move(profile), 0, spec.params);
    return make_field(FieldKind::Separable, std::move(profile), ell, spec.params);
  };

  switch (spec.family) {
    case Family::RandomRadial:
      for (std::size_t k = 0; k < spec.count; ++k) {
        out.push_back(make_field(FieldKind::Radial,
                                 random_profile(rng, spec.r_min, spec.r_max, spec.knots,
                                                spec.degree, spec.nonnegative),
                                 0, spec.params));
      }
      break;
    case Family::RandomSeparable:
      if (spec.params.dim != 2 && spec.params.dim != 3)
        throw std::invalid_argument("generate: RandomSeparable needs N in {2,3}");
      for (std::size_t k = 0; k < spec.count; ++k) {
        auto profile =
            random_profile(rng, spec.r_min, spec.r_max, spec.knots, spec.degree, spec.nonnegative);
        const int ell = static_cast<int>(rng.integer(0, spec.max_ell));
        out.push_back(separable(std::move(profile), ell));
      }
      break;
    case Family::HarmonicPlateau:
      for (double R : spec.plateau_R)
        out.push_back(separable(harmonic_plateau_profile(R, spec.degree), spec.ell));
      break;
    case Family::RellichDegeneracy:
      for (double R : spec.plateau_R)
        out.push_back(separable(log_plateau_profile(R, spec.ramp_factor, spec.degree), spec.ell));
      break;
    case Family::NearExtremalHardy:
      for (std::size_t k = 0; k < spec.count; ++k) {
        out.push_back(make_field(FieldKind::Radial,
                                 near_extremal_hardy_profile(spec.hardy_p, spec.hardy_beta,
                                                             spec.r_min, spec.r_max, spec.degree),
                                 0, spec.params));
      }
      break;
  }
  return out;
}

}  // namespace hrl
