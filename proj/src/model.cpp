#include "hrl/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hrl {

std::optional<std::string> validate(const SpaceParams& params, Restriction context) {
  if (params.dim < 1) return "N>=1 required";
  switch (context) {
    case Restriction::RadialStep:
      if (!(params.a < 1.0)) return "a<1 required";
      return std::nullopt;
    case Restriction::AngularStep:
      if (params.a == static_cast<double>(params.dim)) return "a!=N required (beta=-N+a-1 must differ from -1)";
      return std::nullopt;
    case Restriction::CZRange:
      if (!(params.a > -static_cast<double>(params.dim))) return "a>-N required";
      return std::nullopt;
    case Restriction::PropBound:
      return validate(OneDimConfig{params.p, 2.0, 1.0, params.dim - 1.0 + params.a});
  }
  return std::nullopt;
}

std::optional<std::string> validate(const OneDimConfig& config) {
  if (!(config.p >= 1.0)) return "p>=1 required";
  if (!(config.p * (config.a_op - 1.0) > config.alpha)) {
    std::ostringstream msg;
    msg << "p(a-1)>alpha required (p(a-1)=" << config.p * (config.a_op - 1.0)
        << ", alpha=" << config.alpha << ")";
    return msg.str();
  }
  return std::nullopt;
}

TestField::TestField(FieldKind kind, BSpline profile, AngularMode mode, SpaceParams params)
    : kind_(kind), profile_(std::move(profile)), mode_(mode), params_(params) {}

TestField TestField::with_params(SpaceParams params) const {
  if (params.dim != params_.dim)
    throw std::invalid_argument("TestField::with_params: dimension change needs make_field");
  return TestField(kind_, profile_, mode_, params);
}

TestField TestField::with_profile(BSpline profile) const {
  return TestField(kind_, std::move(profile), mode_, params_);
}

double TestField::value_at(std::span<const double> x) const {
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double r = std::sqrt(r2);
  const double g = profile_.evaluate(r);
  if (kind_ == FieldKind::Radial || mode_.ell() == 0) return g;
  double angle = 0.0;
  if (params_.dim == 2) {
    angle = std::atan2(x[1], x[0]);
  } else {
    angle = std::acos(std::clamp(x[2] / r, -1.0, 1.0));
  }
  return g * mode_.at(angle).value;
}

TestField make_field(FieldKind kind, BSpline profile, int ell, SpaceParams params) {
  if (params.dim < 1) throw std::invalid_argument("make_field: N>=1 required");
  if (!(profile.r_min() > 0.0))
    throw std::invalid_argument("make_field: profile support must stay away from the origin");
  if (kind == FieldKind::Separable) {
    if (params.dim != 2 && params.dim != 3)
      throw std::invalid_argument("make_field: separable fields need N in {2,3}");
    return TestField(kind, std::move(profile), AngularMode(ell, params.dim), params);
  }
  if (ell != 0) throw std::invalid_argument("make_field: radial fields carry ell = 0");
  return TestField(kind, std::move(profile), AngularMode::constant(params.dim), params);
}

}  // namespace hrl
