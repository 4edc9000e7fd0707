// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstring>

#include "internal.hpp"

namespace ramsey::kernels {
namespace {

// Row update ci[0..n) += alpha * bp[0..n). The tail uses std::fma so that
// every element sees the same fused rounding as the vector lanes.
inline void fused_row_update(double alpha, const double* bp, double* ci,
                             std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d vc = _mm256_loadu_pd(ci + j);
    vc = _mm256_fmadd_pd(va, _mm256_loadu_pd(bp + j), vc);
    _mm256_storeu_pd(ci + j, vc);
  }
  for (; j < n; ++j) ci[j] = std::fma(alpha, bp[j], ci[j]);
}

void gemm(const double* a, const double* b, double* c, std::size_t m,
          std::size_t k, std::size_t n) {
  std::memset(c, 0, sizeof(double) * m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      fused_row_update(a[i * k + p], b + p * n, c + i * n, n);
    }
  }
}

void gemm_tn(const double* a, const double* b, double* c, std::size_t m,
             std::size_t k, std::size_t n) {
  std::memset(c, 0, sizeof(double) * m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      fused_row_update(a[p * m + i], b + p * n, c + i * n, n);
    }
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s = std::fma(x[i], y[i], s);
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  fused_row_update(alpha, x, y, n);
}

inline __m256d vabs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// _mm256_max_pd drops NaN in its first operand, so NaN lanes are tracked
// separately and reported as NaN.
double reduce_max(__m256d vmax, __m256d vnan, double tail_max, bool tail_nan) {
  if (tail_nan || _mm256_movemask_pd(vnan) != 0) return std::nan("");
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  double m = tail_max;
  for (double l : lanes) m = l > m ? l : m;
  return m;
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
  __m256d vmax = _mm256_setzero_pd();
  __m256d vnan = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        vabs(_mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    vnan = _mm256_or_pd(vnan, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
    vmax = _mm256_max_pd(vmax, d);
  }
  double m = 0.0;
  bool nan = false;
  for (; i < n; ++i) {
    const double d = std::fabs(x[i] - y[i]);
    nan = nan || std::isnan(d);
    m = d > m ? d : m;
  }
  return reduce_max(vmax, vnan, m, nan);
}

double max_abs(const double* x, std::size_t n) {
  __m256d vmax = _mm256_setzero_pd();
  __m256d vnan = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = vabs(_mm256_loadu_pd(x + i));
    vnan = _mm256_or_pd(vnan, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
    vmax = _mm256_max_pd(vmax, d);
  }
  double m = 0.0;
  bool nan = false;
  for (; i < n; ++i) {
    const double d = std::fabs(x[i]);
    nan = nan || std::isnan(d);
    m = d > m ? d : m;
  }
  return reduce_max(vmax, vnan, m, nan);
}

}  // namespace

namespace internal {

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{Isa::kAvx2, gemm, gemm_tn, dot,
                                 axpy, max_abs_diff, max_abs};
  return table;
}

}  // namespace internal
}  // namespace ramsey::kernels
