#pragma once

#include <vector>

#include "hrl/functionals.hpp"
#include "hrl/linalg.hpp"
#include "hrl/model.hpp"

namespace hrl {

/// Quadratic quotients of separable fields u = g(r) Y at p = 2.
enum class Problem {
  Hardy,                    // \int u^2/|x|^2            / \int |grad u|^2
  Rellich,                  // \int u^2/|x|^4            / \int |Lap u|^2
  HardyRellich,             // \int |grad u|^2/|x|^2     / \int |Lap u|^2
  GradQuotientVsLap,        // \int |grad(u/|x|)|^2      / \int |Lap u|^2
  GradQuotientVsSurrogate,  // \int |grad(u/|x|)|^2      / \int S(u)^2
  Hardy1D,                  // \int r^beta f^2           / \int r^(beta+2) f'^2
};

const char* problem_name(Problem problem);

struct FormSpec {
  Problem problem = Problem::Hardy;
  SpaceParams params{3, 2.0, 0.0};  // p is ignored; forms are quadratic
  int ell = 0;
  double beta = -3.0;  // Hardy1D only
  SurrogateVariant variant = SurrogateVariant::InverseSquare;
};

/// Sphere moments of the mode: c0 = \int Y^2, c1 = \int |grad_S Y|^2,
/// c2 = \int |D^2_S Y|^2, by the sphere rule (closed area for ell = 0).
/// Nonradial moments need N in {2,3}.
struct AngularMoments {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
};
AngularMoments angular_moments(int dim, int ell, int sphere_nodes = 0);

/// B = numerator form, A = denominator form over the spline basis.
struct QuadraticFormPair {
  Matrix numerator;    // B
  Matrix denominator;  // A
  FormSpec spec;
  std::vector<double> breaks;
  int degree = 0;
};

/// For ell > 0 outside N in {2,3} the mode enters only through lambda
/// (surrogate forms are rejected there).  Parallel over matrix rows; each
/// entry is one deterministic sum over the nodes shared by the two basis
/// functions.
QuadraticFormPair assemble_forms(const FormSpec& spec, std::vector<double> breaks, int degree,
                                 int order = 12, double max_ratio = 1.5);

/// Serial reference: node loop accumulating local outer products.
QuadraticFormPair assemble_forms_reference(const FormSpec& spec, std::vector<double> breaks,
                                           int degree, int order = 12, double max_ratio = 1.5);

/// c^T B c / c^T A c.
double form_quotient(const QuadraticFormPair& pair, std::span<const double> c);

}  // namespace hrl
