#pragma once

// Small dense vector/matrix types. Arithmetic goes through the dispatched
// kernels in hees/kernels.hpp.

#include <cstddef>
#include <span>
#include <vector>

namespace hees {

using Vector = std::vector<double>;

// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> x, std::span<const double> y);
double squared_norm(std::span<const double> x);
double norm(std::span<const double> x);
void axpy(double alpha, std::span<const double> x, std::span<double> y);

Vector multiply(const Matrix& a, std::span<const double> x);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

// max_ij |a_ij - b_ij|; matrices must have equal shape.
double max_abs_difference(const Matrix& a, const Matrix& b);

// Condition number of C = A^T A, i.e. (s_max(A) / s_min(A))^2 from the
// singular values of A. Returns +infinity when A is rank deficient or
// contains non-finite entries.
double condition_number(const Matrix& a);

// log |det A| via LU; -infinity for singular matrices.
double log_abs_determinant(const Matrix& a);

}  // namespace hees
