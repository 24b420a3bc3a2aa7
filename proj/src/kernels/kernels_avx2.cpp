#include "omn/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

#define OMN_AVX2 __attribute__((target("avx2")))

namespace omn::kernels {
namespace {

OMN_AVX2 void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

OMN_AVX2 double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t bulk = n - n % 4;
  for (std::size_t i = 0; i < bulk; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  // (s0 + s2, s1 + s3), then lane 0 + lane 1
  __m128d pair = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double r = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (std::size_t i = bulk; i < n; ++i) r += x[i] * y[i];
  return r;
}

OMN_AVX2 void matmul_avx2(const double* a, const double* b, double* c, std::size_t m,
                          std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) axpy_avx2(a[i * k + p], b + p * n, crow, n);
  }
}

constexpr KernelTable kAvx2{Isa::avx2, &axpy_avx2, &dot_avx2, &matmul_avx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table() noexcept { return &kAvx2; }
bool avx2_cpu() noexcept { return __builtin_cpu_supports("avx2"); }
}  // namespace detail

}  // namespace omn::kernels

#else

namespace omn::kernels::detail {
const KernelTable* avx2_table() noexcept { return nullptr; }
bool avx2_cpu() noexcept { return false; }
}  // namespace omn::kernels::detail

#endif
