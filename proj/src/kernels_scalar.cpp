#include "hees/kernels.hpp"

namespace hees::simd {
namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv(const double* a, const double* x, double* y, std::size_t rows,
          std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

void gemm(const double* a, const double* b, double* c, std::size_t n,
          std::size_t k, std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    double* c_row = c + i * m;
    for (std::size_t j = 0; j < m; ++j) c_row[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) axpy(a[i * k + p], b + p * m, c_row, m);
  }
}

void rank1_update(double alpha, const double* x, double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) axpy(alpha * x[i], x, a + i * n, n);
}

constexpr KernelTable kTable{Isa::scalar, dot, axpy, gemv, gemm, rank1_update};

}  // namespace

const KernelTable& scalar_kernels() { return kTable; }

}  // namespace hees::simd
