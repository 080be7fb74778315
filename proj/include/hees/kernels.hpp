#pragma once

// Dense double-precision inner loops used by the optimizer.
//
// Every kernel has a scalar reference implementation. Vectorized variants
// (AVX2+FMA on x86-64, NEON on AArch64) are compiled into their own
// translation units and chosen at runtime. The HEES_ISA environment variable
// ("scalar", "avx2", "neon") forces a particular table when it is supported.
//
// All matrices are row-major and densely packed.

#include <cstddef>
#include <optional>
#include <string_view>

namespace hees::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;

  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);

  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // y = A x, A is rows x cols
  void (*gemv)(const double* a, const double* x, double* y, std::size_t rows,
               std::size_t cols);

  // C = A B, A is n x k, B is k x m, C is n x m
  void (*gemm)(const double* a, const double* b, double* c, std::size_t n,
               std::size_t k, std::size_t m);

  // A += alpha * x x^T, A is n x n
  void (*rank1_update)(double alpha, const double* x, double* a,
                       std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not built for this target.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// True if the variant was built and the running CPU can execute it.
bool supported(Isa isa);

// Best supported variant for this CPU.
Isa detect_best();

// Table used by the library. Resolved once from HEES_ISA or detect_best().
const KernelTable& active();

// Override the active table. Throws std::invalid_argument if unsupported.
void select(Isa isa);

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

}  // namespace hees::simd
