#include <cmath>

#include "doctest.h"
#include "hrl/linalg.hpp"
#include "hrl/quotients.hpp"
#include "hrl/rng.hpp"
#include "oracles.hpp"

using namespace hrl;

namespace {

Matrix random_symmetric(Rng& rng, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
  return m;
}

Matrix random_spd(Rng& rng, std::size_t n) {
  Matrix g(n, n);
  for (auto i = 0u; i < n; ++i)
    for (auto j = 0u; j < n; ++j) g(i, j) = rng.uniform(-1.0, 1.0);
  Matrix a = g * g.transposed();
  for (auto i = 0u; i < n; ++i) a(i, i) += static_cast<double>(n);
  return a;
}

QuadraticFormPair pair_of(Matrix b, Matrix a) {
  QuadraticFormPair p;
  p.numerator = std::move(b);
  p.denominator = std::move(a);
  return p;
}

}  // namespace

TEST_CASE("cholesky reconstructs SPD matrices and rejects indefinite ones") {
  Rng rng(1);
  const auto a = random_spd(rng, 6);
  const auto l = cholesky(a);
  REQUIRE(l.has_value());
  const auto back = *l * l->transposed();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(back(i, j) == doctest::Approx(a(i, j)).epsilon(1e-13));
  Matrix bad = Matrix::identity(3);
  bad(1, 1) = -1.0;
  CHECK_FALSE(cholesky(bad).has_value());
}

TEST_CASE("jacobi_eigen diagonalizes symmetric matrices") {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_symmetric(rng, 7);
    const auto e = jacobi_eigen(a);
    for (std::size_t k = 0; k < 7; ++k) {
      std::vector<double> v(7);
      for (std::size_t i = 0; i < 7; ++i) v[i] = e.vectors(i, k);
      const auto av = a.apply(v);
      for (std::size_t i = 0; i < 7; ++i) CHECK(std::abs(av[i] - e.values[k] * v[i]) <= 1e-12);
      if (k > 0) CHECK(e.values[k - 1] <= e.values[k]);
    }
  }
}

TEST_CASE("max_generalized_eig examples") {
  Matrix a(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = 1.0;
  CHECK(max_generalized_eig(pair_of(Matrix::identity(2), a)).value == doctest::Approx(1.0).epsilon(1e-14));
  Rng rng(3);
  for (std::size_t n : {1u, 4u, 9u}) {
    const auto s = random_spd(rng, n);
    CHECK(max_generalized_eig(pair_of(s, s)).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  Matrix indefinite = Matrix::identity(2);
  indefinite(1, 1) = -5.0;
  CHECK(max_generalized_eig(pair_of(Matrix::identity(2), indefinite)).degenerate);
}

TEST_CASE("random 5x5 SPD pair matches the characteristic-polynomial oracle") {
  Rng rng(4);
  const auto a = random_spd(rng, 5);
  const auto b = random_symmetric(rng, 5);
  const auto g = generalized_eigen(b, a);
  const double bound = b.frobenius() + 1.0;
  const auto roots = oracle::generalized_roots(b, a, -bound, bound);
  REQUIRE(roots.size() == 5);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(g.values[k] - roots[k]) <= 1e-8 * std::max(1.0, std::abs(roots[k])));
}

TEST_CASE("generalized eigenvectors are A-normalized with small residuals") {
  Rng rng(5);
  const auto a = random_spd(rng, 6);
  const auto b = random_symmetric(rng, 6);
  const auto g = generalized_eigen(b, a);
  for (std::size_t k = 0; k < 6; ++k) {
    std::vector<double> c(6);
    for (std::size_t i = 0; i < 6; ++i) c[i] = g.vectors(i, k);
    const auto ac = a.apply(c);
    double norm = 0.0;
    for (std::size_t i = 0; i < 6; ++i) norm += c[i] * ac[i];
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(generalized_residual(b, a, g.values[k], c) <= 1e-12);
  }
}

TEST_CASE("badly scaled SPD denominators are handled by diagonal scaling") {
  Matrix a(3, 3), b = Matrix::identity(3);
  const double d[3] = {1e-10, 1.0, 1e10};
  for (int i = 0; i < 3; ++i) a(i, i) = d[i];
  a(0, 1) = a(1, 0) = 0.5e-5;
  const auto g = generalized_eigen(b, a);
  CHECK_FALSE(g.degenerate);
  // Largest mu is 1 / lambda_min of the leading 2x2 block.
  const double tr = 1.0 + 1e-10, det = 1e-10 - 0.25e-10;
  const double lambda_min = det / (0.5 * (tr + std::sqrt(tr * tr - 4.0 * det)));
  CHECK(g.values.back() == doctest::Approx(1.0 / lambda_min).epsilon(1e-8));
}
