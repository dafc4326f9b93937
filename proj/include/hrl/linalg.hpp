#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hrl {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<double>& data() const { return data_; }

  Matrix transposed() const;
  std::vector<double> apply(std::span<const double> x) const;
  double frobenius() const;
  double trace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// ||A - A^T||_F / ||A||_F (0 for the zero matrix).
double symmetry_residual(const Matrix& a);

/// Lower Cholesky factor, or nullopt when a pivot is not positive.
std::optional<Matrix> cholesky(const Matrix& a);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
  int sweeps = 0;
};
/// Cyclic Jacobi rotations until the off-diagonal mass is below
/// tol * ||A||_F.
SymmetricEigen jacobi_eigen(Matrix a, double tol = 1e-15, int max_sweeps = 100);

struct GeneralizedEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns c_k with c_k^T A c_k = 1
  bool degenerate = false;     // A not positive definite even after jitter
  double jitter = 0.0;         // diagonal shift added to the scaled A
};
/// B c = mu A c for symmetric B and symmetric positive definite A: diagonal
/// scaling of A, Cholesky (retried once with jitter 1e-12 trace), then Jacobi
/// on L^{-1} B L^{-T}.
GeneralizedEigen generalized_eigen(const Matrix& b, const Matrix& a);

/// ||B c - mu A c|| / ((||B|| + |mu| ||A||) ||c||).
double generalized_residual(const Matrix& b, const Matrix& a, double mu,
                            std::span<const double> c);

}  // namespace hrl
