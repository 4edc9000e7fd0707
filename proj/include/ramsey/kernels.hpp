#pragma once

// Dense double-precision inner loops. Every kernel has a portable scalar
// reference implementation and, on x86-64, an AVX2/FMA variant. The active
// table is chosen once at first use from the CPU feature bits; setting the
// environment variable RAMSEY_KERNELS=scalar forces the reference path.
//
// The matrix-product kernels accumulate each output element in ascending
// inner index regardless of the variant, so gemm results differ between
// variants only by fused versus unfused rounding. dot reassociates into
// vector lanes on the AVX2 path.

#include <cstddef>
#include <string_view>

namespace ramsey::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  /// c[m x n] = a[m x k] * b[k x n], all row-major and densely packed.
  void (*gemm)(const double* a, const double* b, double* c, std::size_t m,
               std::size_t k, std::size_t n);

  /// c[m x n] = a[k x m]^T * b[k x n].
  void (*gemm_tn)(const double* a, const double* b, double* c, std::size_t m,
                  std::size_t k, std::size_t n);

  double (*dot)(const double* x, const double* y, std::size_t n);

  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  double (*max_abs_diff)(const double* x, const double* y, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

/// Table selected at first call; immutable afterwards.
const KernelTable& active();

}  // namespace ramsey::kernels
