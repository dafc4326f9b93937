#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hrl/corpus.hpp"
#include "hrl/forms.hpp"
#include "hrl/functionals.hpp"
#include "hrl/ops1d.hpp"
#include "hrl/optimize.hpp"
#include "hrl/quadrature.hpp"
#include "hrl/quotients.hpp"
#include "hrl/rng.hpp"
#include "oracles.hpp"

using namespace hrl;
using std::numbers::pi;

namespace {

std::vector<double> unit_vector(std::size_t n, std::size_t i) {
  std::vector<double> e(n, 0.0);
  e[i] = 1.0;
  return e;
}

}  // namespace

TEST_CASE("catalog examples") {
  CHECK(catalog("hardy", 3).value == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(catalog("rellich", 5).value == doctest::Approx(0.64).epsilon(1e-15));
  CHECK(catalog("hardy_rellich_p2", 3).value == doctest::Approx(36.0 / 25.0).epsilon(1e-15));
  CHECK(catalog("hardy_rellich_p2", 4).value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(catalog("hardy_rellich_p2", 6).value == doctest::Approx(4.0 / 36.0).epsilon(1e-15));
  CHECK(catalog("hardy", 5, 3.0).value == doctest::Approx(std::pow(1.5, 3)).epsilon(1e-15));
  CHECK_THROWS_AS(catalog("hardy", 2, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(catalog("rellich", 4, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(catalog("hardy_rellich_p2", 2), std::invalid_argument);
  CHECK_THROWS_AS(catalog("sobolev", 3), std::invalid_argument);
}

TEST_CASE("two-element forms match hand quadrature") {
  std::vector<double> breaks;
  for (int k = 0; k < 8; ++k) breaks.push_back(0.5 * std::pow(1.3, k));
  const auto carrier = BSpline::zeros(breaks, 5);
  REQUIRE(carrier.size() == 2);
  const BSpline g[2] = {carrier.with_coefficients(unit_vector(2, 0)), carrier.with_coefficients(unit_vector(2, 1))};
  const auto hand = [&](const std::function<double(double)>& f) {
    return oracle::integrate(f, breaks.front(), breaks.back(), 1e-15, breaks);
  };

  SUBCASE("Hardy-Rellich N=3, l=1") {
    FormSpec spec;
    spec.problem = Problem::HardyRellich;
    spec.params = {3, 2.0, 0.0};
    spec.ell = 1;
    const auto pair = assemble_forms(spec, breaks, 5);
    const double c0 = integrate_sphere([](double p) { return std::cos(p) * std::cos(p); }, 3);
    const double lambda = 2.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double b = c0 * hand([&](double r) {
          return g[i].evaluate(r, 1) * g[j].evaluate(r, 1) + lambda * g[i].evaluate(r) * g[j].evaluate(r) / (r * r);
        });
        const auto L = [&](const BSpline& s, double r) {
          return s.evaluate(r, 2) + 2.0 * s.evaluate(r, 1) / r - lambda * s.evaluate(r) / (r * r);
        };
        const double a = c0 * hand([&](double r) { return L(g[i], r) * L(g[j], r) * r * r; });
        CHECK(pair.numerator(i, j) == doctest::Approx(b).epsilon(1e-10));
        CHECK(pair.denominator(i, j) == doctest::Approx(a).epsilon(1e-10));
      }
  }
  SUBCASE("Hardy1D") {
    FormSpec spec;
    spec.problem = Problem::Hardy1D;
    spec.beta = -3.0;
    const auto pair = assemble_forms(spec, breaks, 5);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(pair.numerator(i, j) ==
              doctest::Approx(hand([&](double r) { return g[i].evaluate(r) * g[j].evaluate(r) / (r * r * r); }))
                  .epsilon(1e-10));
        CHECK(pair.denominator(i, j) ==
              doctest::Approx(hand([&](double r) { return g[i].evaluate(r, 1) * g[j].evaluate(r, 1) / r; }))
                  .epsilon(1e-10));
      }
  }
}

TEST_CASE("l=0 Hardy forms reduce to the 1D quotient") {
  Rng rng(3);
  for (int N : {3, 4, 5}) {
    FormSpec spec;
    spec.problem = Problem::Hardy;
    spec.params = {N, 2.0, 0.0};
    const auto prof = random_profile(rng, 0.2, 5.0, 14, 5, false);
    const auto pair = assemble_forms(spec, prof.breaks(), 5);
    const double q1 = hardy1d_quotient(prof, 2.0, N - 3.0).ratio;
    CHECK(form_quotient(pair, prof.coefficients()) == doctest::Approx(q1).epsilon(1e-11));
  }
}

TEST_CASE("forms are symmetric and the parallel assembly matches the reference") {
  const auto breaks = log_uniform_breaks(1e-2, 1e2, 40);
  for (Problem problem : {Problem::Hardy, Problem::Rellich, Problem::HardyRellich, Problem::GradQuotientVsLap,
                          Problem::GradQuotientVsSurrogate}) {
    FormSpec spec;
    spec.problem = problem;
    spec.params = {3, 2.0, 0.0};
    spec.ell = 2;
    const auto a = assemble_forms(spec, breaks, 5);
    const auto b = assemble_forms_reference(spec, breaks, 5);
    CHECK(symmetry_residual(a.numerator) <= 1e-12 * a.numerator.frobenius());
    CHECK(symmetry_residual(a.denominator) <= 1e-12 * a.denominator.frobenius());
    double gap = 0.0;
    for (std::size_t k = 0; k < a.numerator.data().size(); ++k) {
      gap = std::max(gap, std::abs(a.numerator.data()[k] - b.numerator.data()[k]));
      gap = std::max(gap, std::abs(a.denominator.data()[k] - b.denominator.data()[k]) /
                              a.denominator.frobenius() * a.numerator.frobenius());
    }
    CHECK(gap <= 1e-13 * a.numerator.frobenius());
  }
}

TEST_CASE("form quotients agree with the field functionals") {
  // GradQuotientVsLap and VsSurrogate at p=2 are the field functionals.
  Rng rng(4);
  for (int N : {2, 3}) {
    const auto prof = random_profile(rng, 0.2, 5.0, 14, 5, false);
    const auto u = make_field(FieldKind::Separable, prof, 1, {N, 2.0, 0.0});
    const auto rep = evaluate_report(u);
    for (auto [problem, expected] : {std::pair{Problem::GradQuotientVsLap, rep.lhs_grad_quotient / rep.rhs_lap},
                                     std::pair{Problem::GradQuotientVsSurrogate, rep.lhs_grad_quotient / rep.rhs_surrogate}}) {
      FormSpec spec;
      spec.problem = problem;
      spec.params = {N, 2.0, 0.0};
      spec.ell = 1;
      CHECK(form_quotient(assemble_forms(spec, prof.breaks(), 5), prof.coefficients()) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
    const auto hr = hardy_rellich_terms(u);
    FormSpec spec;
    spec.problem = Problem::HardyRellich;
    spec.params = {N, 2.0, 0.0};
    spec.ell = 1;
    if (N == 3)
      CHECK(form_quotient(assemble_forms(spec, prof.breaks(), 5), prof.coefficients()) ==
            doctest::Approx(hr.hardy / rep.rhs_lap).epsilon(1e-10));
  }
}

TEST_CASE("reproduce_sharp examples") {
  SharpOptions opts;
  const auto hr5 = reproduce_sharp(Problem::HardyRellich, 5, opts);
  CHECK(hr5.best.value >= 0.95 * 0.16);
  CHECK(hr5.best.value <= 0.16 * (1 + 1e-3));
  CHECK(hr5.best.residual <= 1e-8);
  CHECK(hr5.per_mode.size() == 4);

  const auto hr3 = reproduce_sharp(Problem::HardyRellich, 3, opts);
  CHECK(hr3.best.ell == 1);
  CHECK(hr3.best.value <= 1.44 * (1 + 1e-3));

  // Radial Rellich N=5 approaches 16/25 from below as the domain widens.
  SharpOptions narrow = opts, wide = opts;
  narrow.max_ell = wide.max_ell = 0;
  narrow.r_min = 1e-2;
  narrow.r_max = 1e2;
  narrow.basis = 80;
  wide.basis = 120;
  const double v1 = reproduce_sharp(Problem::Rellich, 5, narrow).best.value;
  const double v2 = reproduce_sharp(Problem::Rellich, 5, wide).best.value;
  CHECK(v1 < v2);
  CHECK(v2 <= 0.64 * (1 + 1e-3));
}

TEST_CASE("variational monotonicity across refinement and widening") {
  SharpOptions o;
  o.max_ell = 0;
  double prev = 0.0;
  for (int basis : {30, 60, 120}) {
    o.basis = basis;
    const double v = reproduce_sharp(Problem::Hardy, 3, o).best.value;
    CHECK(v >= prev * (1 - 1e-12));
    prev = v;
  }
  prev = 0.0;
  for (int decades : {2, 3, 4}) {
    o.r_min = std::pow(10.0, -decades);
    o.r_max = std::pow(10.0, decades);
    o.basis = 20 * decades;
    const double v = reproduce_sharp(Problem::Hardy, 3, o).best.value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("quotients never exceed catalog constants") {
  SharpOptions o;
  o.basis = 40;
  o.max_ell = 2;
  for (int N = 3; N <= 6; ++N) {
    CHECK(reproduce_sharp(Problem::Hardy, N, o).best.value <= catalog("hardy", N).value * (1 + 1e-3));
    CHECK(reproduce_sharp(Problem::HardyRellich, N, o).best.value <=
          catalog("hardy_rellich_p2", N).value * (1 + 1e-3));
    if (N >= 5) CHECK(reproduce_sharp(Problem::Rellich, N, o).best.value <= catalog("rellich", N).value * (1 + 1e-3));
  }
}

TEST_CASE("Hardy1D eigen-solve with 60 coefficients on [1e-3, 1e3]") {
  FormSpec spec;
  spec.problem = Problem::Hardy1D;
  spec.beta = -3.0;
  const auto breaks = graded_log_breaks(1e-3, 1e3, 65, 8, 0.25);
  REQUIRE(BSpline::basis_size(breaks.size(), 5) == 60);
  const auto q = max_generalized_eig(assemble_forms(spec, breaks, 5));
  // The supremum over the domain is 1 / (1 + pi^2 / L^2), L = ln(1e6).
  const double L = std::log(1e6);
  CHECK(q.value >= 0.95);
  CHECK(q.value <= 1.0 / (1.0 + pi * pi / (L * L)) * (1 + 1e-9));
  // The maximizing coefficients reproduce the value through hardy1d_quotient.
  const BSpline f(breaks, 5, q.argmax);
  CHECK(hardy1d_quotient(f, 2.0, -3.0).ratio == doctest::Approx(q.value).epsilon(1e-8));
}

TEST_CASE("breakpoint helpers") {
  const auto u = log_uniform_breaks(1e-3, 1e3, 12);
  CHECK(u.size() == 13);
  CHECK(u.front() == 1e-3);
  CHECK(u.back() == 1e3);
  for (std::size_t k = 2; k < u.size(); ++k)
    CHECK(u[k] / u[k - 1] == doctest::Approx(u[1] / u[0]).epsilon(1e-12));
  const auto g = graded_log_breaks(1e-3, 1e3, 20, 3, 0.5);
  CHECK(g.size() == 21);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 1e3);
  CHECK(std::log(g[2] / g[1]) == doctest::Approx(2 * std::log(g[1] / g[0])).epsilon(1e-12));
  CHECK(std::log(g[20] / g[19]) == doctest::Approx(std::log(g[1] / g[0])).epsilon(1e-10));
  CHECK_THROWS_AS(graded_log_breaks(1e-3, 1e3, 6, 3, 0.5), std::invalid_argument);
}

TEST_CASE("Rellich degeneracy along the plateau family") {
  const auto grid = [] {
    std::vector<double> R;
    for (int k = 4; k <= 12; ++k) R.push_back(std::ldexp(1.0, k));
    return R;
  }();
  const auto s1 = rellich_degeneracy(grid, 1);
  CHECK(s1.strictly_decreasing);
  CHECK(s1.points.back().quotient < 0.1);
  CHECK(s1.points.back().quotient < s1.points.front().quotient / 3.0);
  const auto s0 = rellich_degeneracy(grid, 0);
  CHECK(s0.floor > 0.05);
  for (const auto& p : s0.points) CHECK(p.quotient >= s0.floor);
}

TEST_CASE("tracked_constant and weight_class_check examples") {
  CHECK(tracked_constant(2, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(tracked_constant(1, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tracked_constant(3, 0.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(tracked_constant(1, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(tracked_constant(4, -1.0) == doctest::Approx(2.0 * (0.5 + std::pow(0.8, 4))).epsilon(1e-15));
  CHECK_THROWS_AS(tracked_constant(3, 1.0), std::invalid_argument);

  CHECK(weight_class_check(3, 0.0, 2.0).in_Aq);
  const auto w = weight_class_check(2, -2.0, 1.5);
  CHECK_FALSE(w.in_Aq);
  CHECK_FALSE(w.in_A_infinity);
  CHECK(weight_class_check(2, 1.9, 2.0).in_Aq);
  CHECK_FALSE(weight_class_check(2, 2.0, 2.0).in_Aq);
  CHECK(weight_class_check(2, 5.0, 2.0).in_A_infinity);
  CHECK_THROWS_AS(weight_class_check(2, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("surrogate chain soundness over the corpus") {
  for (int N = 2; N <= 5; ++N)
    for (double a : {-1.0, 0.0, 0.5}) {
      CorpusSpec spec;
      spec.count = 10;
      spec.seed = 60 + N;
      spec.params = {N, static_cast<double>(N), a};
      spec.family = N <= 3 ? Family::RandomSeparable : Family::RandomRadial;
      for (const auto& u : generate(spec)) CHECK(surrogate_chain_check(u, a).ratio <= 1.0 + 1e-6);
    }
}

TEST_CASE("radial chain soundness") {
  for (int N = 1; N <= 6; ++N)
    for (double a : {-1.0, 0.0, 0.5}) {
      CorpusSpec spec;
      spec.count = 10;
      spec.seed = 70 + N;
      spec.params = {N, static_cast<double>(N), a};
      for (const auto& u : generate(spec)) {
        const auto c = radial_chain_check(u, a);
        CHECK(c.ratio <= 1.0 + 1e-6);
        CHECK(c.bound == doctest::Approx(evaluate_report(u.with_params({N, double(N), a})).radial_second / (1 - a))
                             .epsilon(1e-12));
      }
    }
}

TEST_CASE("maximize_ratio_pN examples") {
  PNOptions o;
  o.starts = 3;
  o.budget = 900;
  o.knots = 10;
  SUBCASE("N=1 surrogate chain has constant 1") {
    const auto r = maximize_ratio_pN(PNProblem::ThmVsSurrogate, {1, 1.0, 0.0}, o);
    REQUIRE(r.tracked_bound.has_value());
    CHECK(*r.tracked_bound == doctest::Approx(1.0));
    CHECK(r.value > 0.0);
    CHECK(r.value <= 1.0 + 1e-6);
    CHECK(r.ell == 0);
  }
  SUBCASE("N=2 bounded by 2") {
    const auto r = maximize_ratio_pN(PNProblem::ThmVsSurrogate, {2, 2.0, 0.0}, o);
    CHECK(*r.tracked_bound == doctest::Approx(2.0));
    CHECK(r.value <= 2.0 * (1 + 1e-6));
    CHECK(r.iterations <= o.budget);
  }
  SUBCASE("deterministic and exploratory problems carry no bound") {
    const auto a = maximize_ratio_pN(PNProblem::ThmVsLap, {2, 2.0, 0.0}, o);
    const auto b = maximize_ratio_pN(PNProblem::ThmVsLap, {2, 2.0, 0.0}, o);
    CHECK(a.value == b.value);
    CHECK(a.argmax == b.argmax);
    CHECK_FALSE(a.tracked_bound.has_value());
    CHECK(std::isfinite(a.value));
  }
  SUBCASE("tiny budgets are reported, not fatal") {
    o.budget = 30;
    const auto r = maximize_ratio_pN(PNProblem::ThmVsHessExact, {3, 3.0, 0.0}, o);
    CHECK(r.budget_exhausted);
    CHECK(std::isfinite(r.value));
  }
  CHECK_THROWS_AS(maximize_ratio_pN(PNProblem::ThmVsSurrogate, {2, 2.0, 1.0}, o), std::invalid_argument);
}

TEST_CASE("plateau ratio series is finite") {
  const double R[] = {16.0, 64.0, 256.0};
  for (PNProblem p : {PNProblem::ThmVsLap, PNProblem::ThmVsHessExact, PNProblem::ThmVsSurrogate}) {
    const auto s = plateau_ratio_series(p, 2, R);
    REQUIRE(s.size() == 3);
    for (const auto& pt : s) CHECK(std::isfinite(pt.ratio));
  }
}

TEST_CASE("nelder_mead minimizes smooth functions") {
  const auto rosen = [](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  NelderMeadOptions o;
  o.max_evaluations = 5000;
  const auto r = nelder_mead(rosen, {-1.2, 1.0}, o);
  CHECK(r.value <= 1e-8);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-3));
  const auto q = nelder_mead([](std::span<const double> x) { return std::isnan(x[0]) ? 0.0 : std::abs(x[0] - 3.0); },
                             {0.0}, o);
  CHECK(q.x[0] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK_THROWS_AS(nelder_mead(rosen, {}, o), std::invalid_argument);
}
