#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qmcft {

/// Dense row-major matrix; only what the transforms and their tests need.
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

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<double> column(std::size_t j) const;
  Matrix transposed() const;

  std::span<const double> data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

/// y = A x
void multiply(const Matrix& a, std::span<const double> x, std::span<double> y);

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Lower-triangular L with L Lᵀ = a. Throws std::domain_error if a is not
/// positive definite.
Matrix cholesky(const Matrix& a);

struct SymmetricEigen {
  std::vector<double> values;  ///< descending
  Matrix vectors;              ///< column j pairs with values[j]
};

/// Cyclic Jacobi rotations; intended for small symmetric matrices.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-15, int max_sweeps = 100);

}  // namespace qmcft
