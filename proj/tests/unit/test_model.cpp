#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hrl/corpus.hpp"
#include "hrl/model.hpp"
#include "hrl/rng.hpp"
#include "oracles.hpp"

using namespace hrl;

namespace {

BSpline sample_profile(std::uint64_t seed, double r_min = 0.2, double r_max = 5.0) {
  Rng rng(seed);
  return random_profile(rng, r_min, r_max, 14, 5, false);
}

}  // namespace

TEST_CASE("validate reports restriction violations") {
  CHECK_FALSE(validate({3, 3.0, 0.5}, Restriction::RadialStep).has_value());
  const auto v = validate({2, 2.0, 1.0}, Restriction::RadialStep);
  REQUIRE(v.has_value());
  CHECK(v->find("a<1 required") != std::string::npos);
  const auto w = validate({3, 3.0, -3.0}, Restriction::CZRange);
  REQUIRE(w.has_value());
  CHECK(w->find("a>-N required") != std::string::npos);
  CHECK(validate({3, 3.0, 3.0}, Restriction::AngularStep).has_value());
  CHECK_FALSE(validate({3, 3.0, 0.0}, Restriction::AngularStep).has_value());
  CHECK(validate(OneDimConfig{2.0, 2.0, 1.0, 2.0}).has_value());
  CHECK_FALSE(validate(OneDimConfig{2.0, 2.0, 1.0, 1.0}).has_value());
  CHECK(validate(OneDimConfig{0.5, 2.0, 1.0, 0.0}).has_value());
}

TEST_CASE("make_field examples") {
  const auto prof = sample_profile(3);

  SUBCASE("radial field has no angular part") {
    const auto f = make_field(FieldKind::Radial, prof, 0, {5, 5.0, 0.0});
    CHECK(f.mode().ell() == 0);
    const double x[5] = {0.3, -0.4, 1.0, 0.2, 0.1};
    const double y[5] = {-0.1, 0.4, -0.3, 1.0, 0.2};
    const double rx = std::sqrt(0.09 + 0.16 + 1.0 + 0.04 + 0.01);
    const double ry = std::sqrt(0.01 + 0.16 + 0.09 + 1.0 + 0.04);
    CHECK(rx == doctest::Approx(ry));
    CHECK(f.value_at(x) == doctest::Approx(prof.evaluate(rx)).epsilon(1e-14));
    CHECK(f.value_at(y) == doctest::Approx(f.value_at(x)).epsilon(1e-12));
  }
  SUBCASE("separable N=2 l=1 is g(r) cos(theta)") {
    const auto f = make_field(FieldKind::Separable, prof, 1, {2, 2.0, 0.0});
    for (double t : {0.0, 0.7, 2.0, -1.1}) {
      const double r = 1.3;
      const double x[2] = {r * std::cos(t), r * std::sin(t)};
      CHECK(f.value_at(x) == doctest::Approx(prof.evaluate(r) * std::cos(t)).epsilon(1e-13));
    }
  }
  SUBCASE("separable N=3 l=2 is g(r) P2(cos phi) with lambda 6") {
    const auto f = make_field(FieldKind::Separable, prof, 2, {3, 2.0, 0.0});
    CHECK(f.mode().lambda() == 6.0);
    const double r = 2.1, phi = 0.9, chi = 0.4;
    const double x[3] = {r * std::sin(phi) * std::cos(chi), r * std::sin(phi) * std::sin(chi), r * std::cos(phi)};
    const double c = std::cos(phi);
    CHECK(f.value_at(x) == doctest::Approx(prof.evaluate(r) * 0.5 * (3 * c * c - 1)).epsilon(1e-12));
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(make_field(FieldKind::Separable, prof, 1, {4, 2.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_field(FieldKind::Radial, prof, 1, {3, 2.0, 0.0}), std::invalid_argument);
  }
}

TEST_CASE("fields vanish outside the support") {
  Rng rng(11);
  for (int N : {2, 3}) {
    const auto f = make_field(FieldKind::Separable, sample_profile(N), 2, {N, 2.0, 0.0});
    for (int k = 0; k < 100; ++k) {
      const double r = k % 2 ? rng.uniform(0.0, 0.2) : rng.uniform(5.0, 50.0);
      std::vector<double> x(N);
      double n2 = 0.0;
      for (auto& v : x) {
        v = rng.uniform(-1.0, 1.0);
        n2 += v * v;
      }
      for (auto& v : x) v *= r / std::sqrt(n2);
      CHECK(f.value_at(x) == 0.0);
    }
  }
}

TEST_CASE("lambda equals l(l+N-2) exactly") {
  for (int N : {2, 3})
    for (int ell = 0; ell <= 10; ++ell) CHECK(AngularMode(ell, N).lambda() == ell * (ell + N - 2));
}

TEST_CASE("angular jets match finite differences") {
  for (int N : {2, 3})
    for (int ell = 1; ell <= 4; ++ell) {
      const AngularMode m(ell, N);
      for (double t : {0.3, 1.1, 2.5}) {
        const auto j = m.at(t);
        const auto v = [&](double s) { return m.at(s).value; };
        const auto g = [&](double s) { return m.at(s).grad; };
        CHECK(j.grad == doctest::Approx(oracle::derivative(v, t, 1e-3)).epsilon(1e-8));
        CHECK(j.hess_tt == doctest::Approx(oracle::derivative(g, t, 1e-3)).epsilon(1e-8));
        if (N == 3) CHECK(j.hess_cc == doctest::Approx(std::cos(t) / std::sin(t) * j.grad).epsilon(1e-12));
      }
    }
}

TEST_CASE("spline reproduces polynomials on interior spans") {
  // Coefficients are the blossom of P at the Greville knot windows:
  // blossom(x^k)(t_1..t_d) = e_k(t_1..t_d) / binom(d, k).
  std::vector<double> breaks;
  for (int k = 0; k <= 12; ++k) breaks.push_back(1.0 + 0.25 * k);
  const int d = 5;
  const double a[6] = {0.7, -1.3, 0.4, 2.0, -0.6, 0.15};
  const auto zero = BSpline::zeros(breaks, d);
  std::vector<double> coef(zero.size());
  for (std::size_t i = 0; i < coef.size(); ++i) {
    double e[6] = {1, 0, 0, 0, 0, 0};
    for (int m = 1; m <= d; ++m) {
      const double t = breaks[i + m];
      for (int k = m; k >= 1; --k) e[k] += t * e[k - 1];
    }
    double binom = 1.0;
    for (int k = 0; k <= d; ++k) {
      coef[i] += a[k] * e[k] / binom;
      binom = binom * (d - k) / (k + 1);
    }
  }
  const auto spline = zero.with_coefficients(coef);
  const auto poly = [&](double x, int der) {
    double s = 0.0;
    for (int k = der; k <= d; ++k) {
      double c = a[k];
      for (int j = 0; j < der; ++j) c *= k - j;
      s += c * std::pow(x, k - der);
    }
    return s;
  };
  // Spans [2.25, 2.75] are covered by a full set of basis functions.
  for (double r : {2.26, 2.4, 2.5, 2.61, 2.74})
    for (int der = 0; der <= kMaxDerivative; ++der)
      CHECK(spline.evaluate(r, der) == doctest::Approx(poly(r, der)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("spline derivatives agree with finite differences") {
  const auto prof = sample_profile(19, 1.0, 4.0);
  for (double r : {1.7, 2.55, 3.3})
    for (int d = 0; d < kMaxDerivative; ++d) {
      const auto f = [&](double s) { return prof.evaluate(s, d); };
      CHECK(prof.evaluate(r, d + 1) ==
            doctest::Approx(oracle::derivative(f, r, 1e-4)).epsilon(1e-6).scale(1.0));
    }
}
