#include "hees/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hees/kernels.hpp"

namespace hees {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> as_eigen(const Matrix& a) {
  return {a.data(), static_cast<Eigen::Index>(a.rows()),
          static_cast<Eigen::Index>(a.cols())};
}

bool all_finite(const Matrix& a) {
  return std::all_of(a.values().begin(), a.values().end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return simd::active().dot(x.data(), y.data(), x.size());
}

double squared_norm(std::span<const double> x) { return dot(x, x); }

double norm(std::span<const double> x) { return std::sqrt(squared_norm(x)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  simd::active().axpy(alpha, x.data(), y.data(), x.size());
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("multiply: shape mismatch");
  Vector y(a.rows());
  simd::active().gemv(a.data(), x.data(), y.data(), a.rows(), a.cols());
  return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  Matrix c(a.rows(), b.cols());
  simd::active().gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  return t;
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_difference: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  return worst;
}

double condition_number(const Matrix& a) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (a.rows() == 0 || !all_finite(a)) return kInf;
  Eigen::JacobiSVD<RowMajor> svd(as_eigen(a));
  const auto& s = svd.singularValues();
  const double smax = s.maxCoeff();
  const double smin = s.minCoeff();
  if (!(smin > 0.0)) return kInf;
  const double ratio = smax / smin;
  return ratio * ratio;
}

double log_abs_determinant(const Matrix& a) {
  if (!a.square()) throw std::invalid_argument("log_abs_determinant: not square");
  Eigen::PartialPivLU<RowMajor> lu(as_eigen(a));
  const auto& packed = lu.matrixLU();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double pivot = std::abs(packed(i, i));
    if (pivot == 0.0) return -std::numeric_limits<double>::infinity();
    sum += std::log(pivot);
  }
  return sum;
}

}  // namespace hees
