#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "hrl/corpus.hpp"
#include "hrl/functionals.hpp"
#include "hrl/ops1d.hpp"
#include "hrl/quadrature.hpp"
#include "hrl/rng.hpp"
#include "oracles.hpp"

using namespace hrl;
using std::numbers::pi;

namespace {

TestField field(FieldKind kind, int N, int ell, std::uint64_t seed, double p = 2.0, double a = 0.0) {
  Rng rng(seed);
  return make_field(kind, random_profile(rng, 0.2, 5.0, 14, 5, false), ell, {N, p, a});
}

std::vector<double> point(int N, double r, Rng& rng) {
  std::vector<double> x(N);
  double n2 = 0.0;
  for (auto& v : x) {
    v = rng.uniform(-1.0, 1.0);
    n2 += v * v;
  }
  for (auto& v : x) v *= r / std::sqrt(n2);
  return x;
}

double r_of(const std::vector<double>& x) {
  return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

double polar_angle(const std::vector<double>& x) {
  return x.size() == 2 ? std::atan2(x[1], x[0]) : std::acos(x[2] / r_of(x));
}

// Second-order central-difference Hessian of u at x.
std::vector<double> fd_hessian(const TestField& u, std::vector<double> x, double h) {
  const std::size_t N = x.size();
  std::vector<double> H(N * N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const auto at = [&](double si, double sj) {
        auto y = x;
        y[i] += si * h;
        y[j] += sj * h;
        return u.value_at(y);
      };
      H[i * N + j] = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
    }
  return H;
}

}  // namespace

TEST_CASE("zero field gives zero functionals") {
  Rng rng(1);
  const auto f = field(FieldKind::Separable, 3, 2, 1);
  const auto zero = f.with_profile(BSpline::zeros(f.profile().breaks(), 5));
  const auto r = evaluate_report(zero);
  CHECK(r.lhs_grad_quotient == 0.0);
  CHECK(r.rhs_lap == 0.0);
  CHECK(r.rhs_hess_exact == 0.0);
  CHECK(r.rhs_surrogate == 0.0);
}

TEST_CASE("radial lhs equals the sphere-reduced T_{2,1} integral") {
  for (int N : {1, 3, 5})
    for (double a : {0.0, 0.5}) {
      const auto u = field(FieldKind::Radial, N, 0, 10 + N, static_cast<double>(N), a);
      const auto& f = u.profile();
      const auto rule = default_rule(f);
      const auto T = apply_T({1.0, 2.0, 1.0, 0.0}, spline_derivative(f, 2), rule);
      std::vector<double> s(rule.size());
      for (std::size_t i = 0; i < rule.size(); ++i) s[i] = std::pow(std::abs(T.values()[i]), N);
      const double ref = sphere_area(N) * integrate_radial_samples(s, N - 1 + a, rule);
      CHECK(oracle::rel(lhs_functional(u).lhs, ref) <= 1e-8);
      // And directly from (f/r)' without T.  |.|^N has kinks at sign changes
      // that Gauss panels straddle, so compare on a fine rule: the kink error
      // is O(h^{N+1}).
      const double direct = sphere_area(N) * oracle::integrate(
          [&](double r) { return std::pow(std::abs(f.evaluate(r, 1) / r - f.evaluate(r) / (r * r)), N) * std::pow(r, N - 1 + a); },
          0.2, 5.0, 1e-13, f.breaks());
      FunctionalOptions fine;
      fine.max_ratio = 1.005;
      CHECK(oracle::rel(lhs_functional(u, fine).lhs, direct) <= (N == 1 ? 1e-6 : 1e-10));
    }
}

TEST_CASE("x1 on the harmonic plateau") {
  const auto u = make_field(FieldKind::Separable, harmonic_plateau_profile(16.0), 1, {2, 2.0, 0.0});
  for (double r : {1.5, 4.0, 11.0})
    for (double t : {0.2, 1.3, 2.9}) {
      const auto s = polar_sample(u, r, t);
      CHECK(s.grad_quotient_sq == doctest::Approx(std::sin(t) * std::sin(t) / (r * r)).epsilon(1e-10).scale(1e-12));
      CHECK(std::abs(s.laplacian) <= 1e-10);
      CHECK(s.hess_sq <= 1e-18);
      // u_rr = 0, r^-1 d_r grad_S u = -sin/r, r^-2 D2_S u = -cos/r, u_r = cos:
      // S^2 = 2 sin^2/r^2 + cos^2/r^2 + (N-1) cos^2/r^2 = 2/r^2.
      const double expected_s = 2.0 / (r * r);
      CHECK(s.surrogate_sq == doctest::Approx(expected_s).epsilon(1e-10));
      // Cartesian oracle of |grad(x1/|x|)|^2.
      const double x[2] = {r * std::cos(t), r * std::sin(t)};
      const auto q = [&](double dx, double dy) {
        const double y[2] = {x[0] + dx, x[1] + dy};
        return u.value_at(y) / std::hypot(y[0], y[1]);
      };
      const double h = 1e-4;
      const double gx = (q(h, 0) - q(-h, 0)) / (2 * h), gy = (q(0, h) - q(0, -h)) / (2 * h);
      CHECK(gx * gx + gy * gy == doctest::Approx(s.grad_quotient_sq).epsilon(1e-6));
    }
}

TEST_CASE("decomposition matches Cartesian finite differences") {
  Rng rng(7);
  int checked = 0;
  for (int N : {2, 3})
    for (int ell = 0; ell <= 3; ++ell)
      for (int rep = 0; rep < 25; ++rep) {
        const auto u = field(FieldKind::Separable, N, ell, 1000 + 100 * N + 10 * ell + rep);
        for (int k = 0; k < 4; ++k) {
          const double r = rng.uniform(0.4, 4.6);
          const auto x = point(N, r, rng);
          const auto s = polar_sample(u, r, polar_angle(x));
          const double h = 1e-4;
          double g2 = 0.0, lap = 0.0;
          for (int i = 0; i < N; ++i) {
            auto xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            const double d = (u.value_at(xp) / r_of(xp) - u.value_at(xm) / r_of(xm)) / (2 * h);
            g2 += d * d;
            lap += (u.value_at(xp) - 2 * u.value_at(x) + u.value_at(xm)) / (h * h);
          }
          // Central differences of u/|x| lose about eps |u| / (r h) to rounding.
          const double ur2 = u.value_at(x) / (r * r);
          const double scale = s.radial_sq + s.angular_sq + ur2 * ur2 + 1e-300;
          CHECK(std::abs(g2 - s.grad_quotient_sq) <= 1e-5 * scale);
          const auto H = fd_hessian(u, x, 1e-4);
          double frob = 0.0;
          for (double v : H) frob += v * v;
          CHECK(std::abs(lap - s.laplacian) <= 1e-5 * std::sqrt(frob) + 1e-8);
          CHECK(std::abs(frob - s.hess_sq) <= 1e-5 * (frob + s.hess_sq) + 1e-12);
          ++checked;
        }
      }
  CHECK(checked == 800);
}

TEST_CASE("radial N=3 laplacian and hessian against Cartesian differences") {
  Rng rng(8);
  const auto u = field(FieldKind::Radial, 3, 0, 77);
  double lap_err = 0.0, lap_scale = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double r = rng.uniform(0.4, 4.6);
    const auto x = point(3, r, rng);
    const auto s = polar_sample(u, r, polar_angle(x));
    const auto H = fd_hessian(u, x, 1e-4);
    double frob = 0.0;
    for (double v : H) frob += v * v;
    CHECK(oracle::rel(std::sqrt(frob), std::sqrt(s.hess_sq)) <= 1e-5);
    const double h = 1e-4;
    double lap = 0.0;
    for (int i = 0; i < 3; ++i) {
      auto xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      lap += (u.value_at(xp) - 2 * u.value_at(x) + u.value_at(xm)) / (h * h);
    }
    lap_err = std::max(lap_err, std::abs(lap - s.laplacian));
    lap_scale = std::max(lap_scale, std::abs(s.laplacian));
    CHECK(s.surrogate_sq == doctest::Approx(s.hess_sq).epsilon(1e-13));
  }
  CHECK(lap_err <= 1e-6 * lap_scale);
}

TEST_CASE("Bochner identity at p=2, a=0") {
  CorpusSpec spec;
  spec.count = 30;
  for (int N : {2, 3}) {
    spec.params = {N, 2.0, 0.0};
    spec.family = Family::RandomSeparable;
    spec.seed = 40 + N;
    for (const auto& u : generate(spec)) {
      const auto r = evaluate_report(u);
      CHECK(std::abs(r.rhs_hess_exact - r.rhs_lap) <= 1e-8 * r.rhs_lap);
    }
  }
}

TEST_CASE("surrogate dominance and AsPrinted variant") {
  Rng rng(9);
  for (int N : {2, 3})
    for (int ell = 0; ell <= 3; ++ell) {
      const auto u = field(FieldKind::Separable, N, ell, 500 + N * 10 + ell);
      for (int k = 0; k < 50; ++k) {
        const double r = rng.uniform(0.2, 5.0), t = rng.uniform(0.01, N == 2 ? 2 * pi : pi - 0.01);
        const auto s = polar_sample(u, r, t);
        CHECK(s.surrogate_sq + 1e-14 >= s.urr * s.urr);
        CHECK(s.surrogate_sq + 1e-14 >= 2 * s.mixed_surrogate * s.mixed_surrogate);
        const auto p = polar_sample(u, r, t, SurrogateVariant::AsPrinted);
        CHECK(p.surrogate_sq - s.surrogate_sq ==
              doctest::Approx((N - 1) * (1.0 / r - 1.0 / (r * r)) * std::pow(u.profile().evaluate(r, 1) * u.mode().at(t).value, 2))
                  .epsilon(1e-12)
                  .scale(s.surrogate_sq + p.surrogate_sq));
      }
    }
}

TEST_CASE("parallel evaluator agrees with the serial reference") {
  for (int N : {2, 3})
    for (double p : {2.0, 3.0})
      for (double a : {-1.0, 0.5}) {
        const auto u = field(FieldKind::Separable, N, 2, 900 + N, p, a);
        const auto x = evaluate_report(u), y = evaluate_reference(u);
        CHECK(oracle::rel(x.lhs_grad_quotient, y.lhs_grad_quotient) <= 1e-12);
        CHECK(oracle::rel(x.rhs_lap, y.rhs_lap) <= 1e-12);
        CHECK(oracle::rel(x.rhs_hess_exact, y.rhs_hess_exact) <= 1e-12);
        CHECK(oracle::rel(x.rhs_surrogate, y.rhs_surrogate) <= 1e-12);
        CHECK(oracle::rel(x.radial_second, y.radial_second) <= 1e-12);
        // Deterministic across calls.
        const auto z = evaluate_report(u);
        CHECK(z.lhs_grad_quotient == x.lhs_grad_quotient);
        CHECK(z.rhs_surrogate == x.rhs_surrogate);
      }
}

TEST_CASE("individual functionals agree with the report") {
  const auto u = field(FieldKind::Separable, 3, 1, 31, 3.0, 0.5);
  const auto r = evaluate_report(u);
  CHECK(lhs_functional(u).lhs == doctest::Approx(r.lhs_grad_quotient).epsilon(1e-13));
  CHECK(rhs_laplacian(u) == doctest::Approx(r.rhs_lap).epsilon(1e-13));
  CHECK(rhs_hessian_exact(u) == doctest::Approx(r.rhs_hess_exact).epsilon(1e-13));
  CHECK(rhs_surrogate(u) == doctest::Approx(r.rhs_surrogate).epsilon(1e-13));
}

TEST_CASE("convexity_check examples") {
  CHECK(convexity_check(2, 1000, 1) <= 1e-12);
  CHECK(convexity_check(3, 10000, 2) <= 1e-12);
  CHECK(convexity_check(4, 1000, 3) <= 1e-12);
  // s = t = 1, N = 4: both sides equal 4.
  CHECK(std::pow(2.0, 2.0) == 2.0 * (1.0 + 1.0) * 1.0);
  CHECK_THROWS_AS(convexity_check(1, 10, 1), std::invalid_argument);
}

TEST_CASE("harmonic plateau growth law") {
  // The outer ramp is scale invariant, so differences between cutoffs are
  // exactly the plateau contributions 2 pi ln(R2/R1) and pi ln(R2/R1).
  const auto a = remark_blowup_report(16.0), b = remark_blowup_report(256.0);
  CHECK(b.hardy_term - a.hardy_term == doctest::Approx(2 * pi * std::log(16.0)).epsilon(1e-8));
  CHECK(b.rellich_term - a.rellich_term == doctest::Approx(pi * std::log(16.0)).epsilon(1e-8));
  CHECK(b.lap_term == doctest::Approx(a.lap_term).epsilon(1e-8));
  CHECK(a.identity_residual <= 1e-8);
  CHECK(b.identity_residual <= 1e-8);
  // Hence the growth ratio stays strictly below ln(256)/ln(16) = 2.
  CHECK(b.hardy_term / a.hardy_term < 2.0);
  CHECK(b.rellich_term / a.rellich_term < 2.0);
}
