#include "hrl/bspline.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hrl {

std::size_t BSpline::basis_size(std::size_t break_count, int degree) {
  if (break_count < static_cast<std::size_t>(degree) + 2) return 0;
  return break_count - static_cast<std::size_t>(degree) - 1;
}

BSpline::BSpline(std::vector<double> breaks, int degree, std::vector<double> coefficients)
    : breaks_(std::move(breaks)), degree_(degree), coefficients_(std::move(coefficients)) {
  if (degree_ < 1) throw std::invalid_argument("BSpline: degree must be >= 1");
  if (breaks_.size() < static_cast<std::size_t>(degree_) + 2)
    throw std::invalid_argument("BSpline: need at least degree+2 breakpoints");
  for (std::size_t k = 1; k < breaks_.size(); ++k) {
    if (!(breaks_[k] > breaks_[k - 1]))
      throw std::invalid_argument("BSpline: breakpoints must be strictly increasing (index " +
                                  std::to_string(k) + ")");
  }
  if (coefficients_.size() != basis_size(breaks_.size(), degree_))
    throw std::invalid_argument("BSpline: expected " +
                                std::to_string(basis_size(breaks_.size(), degree_)) +
                                " coefficients, got " + std::to_string(coefficients_.size()));

  const double h_lo = breaks_[1] - breaks_[0];
  const double h_hi = breaks_[breaks_.size() - 1] - breaks_[breaks_.size() - 2];
  knots_.reserve(breaks_.size() + 2 * degree_);
  for (int k = degree_; k >= 1; --k) knots_.push_back(breaks_.front() - k * h_lo);
  knots_.insert(knots_.end(), breaks_.begin(), breaks_.end());
  for (int k = 1; k <= degree_; ++k) knots_.push_back(breaks_.back() + k * h_hi);
}

BSpline BSpline::zeros(std::vector<double> breaks, int degree) {
  const auto n = basis_size(breaks.size(), degree);
  return BSpline(std::move(breaks), degree, std::vector<double>(n, 0.0));
}

BSpline BSpline::with_coefficients(std::vector<double> coefficients) const {
  return BSpline(breaks_, degree_, std::move(coefficients));
}

double BSpline::greville(std::size_t i) const {
  double sum = 0.0;
  for (int k = 1; k <= degree_; ++k) sum += breaks_[i + k];
  return sum / degree_;
}

long BSpline::find_span(double r) const {
  // Index into knots_ with knots_[s] <= r < knots_[s+1], s in [degree, degree + m - 1].
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), r);
  long k = static_cast<long>(it - breaks_.begin()) - 1;
  k = std::clamp(k, 0L, static_cast<long>(breaks_.size()) - 2);
  return k + degree_;
}

BSpline::LocalBasis BSpline::local_basis(double r, int max_derivative) const {
  const int p = degree_;
  const int nd = std::min(max_derivative, p);
  LocalBasis out;
  out.degree = p;
  out.values.assign(static_cast<std::size_t>(max_derivative + 1) * (p + 1), 0.0);
  if (!(r >= r_min() && r < r_max())) {
    out.first = 0;
    return out;
  }
  const long s = find_span(r);
  out.first = s - 2L * p;

  // Piegl & Tiller, algorithm A2.3.
  std::vector<double> left(p + 1), right(p + 1);
  std::vector<double> ndu((p + 1) * (p + 1));
  auto NDU = [&](int i, int j) -> double& { return ndu[i * (p + 1) + j]; };
  NDU(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = r - knots_[s + 1 - j];
    right[j] = knots_[s + j] - r;
    double saved = 0.0;
    for (int q = 0; q < j; ++q) {
      NDU(j, q) = right[q + 1] + left[j - q];
      const double temp = NDU(q, j - 1) / NDU(j, q);
      NDU(q, j) = saved + right[q + 1] * temp;
      saved = left[j - q] * temp;
    }
    NDU(j, j) = saved;
  }
  for (int j = 0; j <= p; ++j) out.values[j] = NDU(j, p);

  std::vector<double> a(2 * (p + 1));
  auto A = [&](int row, int col) -> double& { return a[row * (p + 1) + col]; };
  for (int q = 0; q <= p; ++q) {
    int s1 = 0, s2 = 1;
    A(0, 0) = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = q - k, pk = p - k;
      if (q >= k) {
        A(s2, 0) = A(s1, 0) / NDU(pk + 1, rk);
        d = A(s2, 0) * NDU(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (q - 1 <= pk) ? k - 1 : p - q;
      for (int j = j1; j <= j2; ++j) {
        A(s2, j) = (A(s1, j) - A(s1, j - 1)) / NDU(pk + 1, rk + j);
        d += A(s2, j) * NDU(rk + j, pk);
      }
      if (q <= pk) {
        A(s2, k) = -A(s1, k - 1) / NDU(pk + 1, q);
        d += A(s2, k) * NDU(q, pk);
      }
      out.values[k * (p + 1) + q] = d;
      std::swap(s1, s2);
    }
  }
  int factor = p;
  for (int k = 1; k <= nd; ++k) {
    for (int q = 0; q <= p; ++q) out.values[k * (p + 1) + q] *= factor;
    factor *= (p - k);
  }

  // Phantom basis functions carry zero coefficients; zero them so callers can
  // assemble forms without index checks.
  const long n = static_cast<long>(coefficients_.size());
  for (int q = 0; q <= p; ++q) {
    const long idx = out.first + q;
    if (idx < 0 || idx >= n) {
      for (int k = 0; k <= max_derivative; ++k) out.values[k * (p + 1) + q] = 0.0;
    }
  }
  return out;
}

double BSpline::evaluate(double r, int derivative) const {
  if (derivative > degree_) return 0.0;
  const auto basis = local_basis(r, derivative);
  double sum = 0.0;
  const long n = static_cast<long>(coefficients_.size());
  for (int q = 0; q <= degree_; ++q) {
    const long idx = basis.first + q;
    if (idx >= 0 && idx < n) sum += coefficients_[idx] * basis.at(derivative, q);
  }
  return sum;
}

Jet BSpline::jet(double r) const {
  Jet out{};
  const auto basis = local_basis(r, kMaxDerivative);
  const long n = static_cast<long>(coefficients_.size());
  for (int q = 0; q <= degree_; ++q) {
    const long idx = basis.first + q;
    if (idx < 0 || idx >= n) continue;
    for (int k = 0; k <= std::min(kMaxDerivative, degree_); ++k)
      out[k] += coefficients_[idx] * basis.at(k, q);
  }
  return out;
}

}  // namespace hrl
