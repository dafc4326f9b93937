#include "hrl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hrl {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: size mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Matrix product: size mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double symmetry_residual(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetry_residual: not square");
  double diff = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j) diff += 2.0 * std::pow(a(i, j) - a(j, i), 2);
  const double norm = a.frobenius();
  return norm > 0.0 ? std::sqrt(diff) / norm : 0.0;
}

std::optional<Matrix> cholesky(const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("cholesky: not square");
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

SymmetricEigen jacobi_eigen(Matrix a, double tol, int max_sweeps) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("jacobi_eigen: not square");
  Matrix v = Matrix::identity(n);
  const double scale = a.frobenius();
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (std::sqrt(2.0 * off) <= tol * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

GeneralizedEigen generalized_eigen(const Matrix& b, const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n)
    throw std::invalid_argument("generalized_eigen: size mismatch");
  GeneralizedEigen out;
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a(i, i) > 0.0)) {
      out.degenerate = true;
      return out;
    }
    d[i] = 1.0 / std::sqrt(a(i, i));
  }
  Matrix as(n, n), bs(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      as(i, j) = 0.5 * (a(i, j) + a(j, i)) * d[i] * d[j];
      bs(i, j) = 0.5 * (b(i, j) + b(j, i)) * d[i] * d[j];
    }

  auto l = cholesky(as);
  if (!l) {
    out.jitter = 1e-12 * as.trace();
    for (std::size_t i = 0; i < n; ++i) as(i, i) += out.jitter;
    l = cholesky(as);
    if (!l) {
      out.degenerate = true;
      return out;
    }
  }
  const Matrix& L = *l;

  // C = L^{-1} Bs L^{-T}: forward substitution on columns, then on rows.
  Matrix y(n, n);
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t i = 0; i < n; ++i) {
      double s = bs(i, col);
      for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * y(k, col);
      y(i, col) = s / L(i, i);
    }
  Matrix c(n, n);
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t j = 0; j < n; ++j) {
      double s = y(row, j);
      for (std::size_t k = 0; k < j; ++k) s -= L(j, k) * c(row, k);
      c(row, j) = s / L(j, j);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) c(i, j) = c(j, i) = 0.5 * (c(i, j) + c(j, i));

  auto eig = jacobi_eigen(std::move(c));
  out.values = eig.values;
  out.vectors = Matrix(n, n);
  // c_k = D L^{-T} y_k.
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> z(n);
    for (std::size_t ii = n; ii-- > 0;) {
      double s = eig.vectors(ii, k);
      for (std::size_t j = ii + 1; j < n; ++j) s -= L(j, ii) * z[j];
      z[ii] = s / L(ii, ii);
    }
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = d[i] * z[i];
  }
  return out;
}

double generalized_residual(const Matrix& b, const Matrix& a, double mu,
                            std::span<const double> c) {
  const auto bc = b.apply(c);
  const auto ac = a.apply(c);
  double r = 0.0, cn = 0.0;
  for (std::size_t i = 0; i < bc.size(); ++i) {
    r += std::pow(bc[i] - mu * ac[i], 2);
    cn += c[i] * c[i];
  }
  const double denom = (b.frobenius() + std::abs(mu) * a.frobenius()) * std::sqrt(cn);
  return denom > 0.0 ? std::sqrt(r) / denom : std::sqrt(r);
}

}  // namespace hrl
