#include "omn/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace omn::kernels {
namespace {

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  // Two registers emulate the four reference lanes: lo = (s0, s1), hi = (s2, s3).
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  const std::size_t bulk = n - n % 4;
  for (std::size_t i = 0; i < bulk; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  float64x2_t pair = vaddq_f64(lo, hi);
  double r = vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
  for (std::size_t i = bulk; i < n; ++i) r += x[i] * y[i];
  return r;
}

void matmul_neon(const double* a, const double* b, double* c, std::size_t m,
                 std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) axpy_neon(a[i * k + p], b + p * n, crow, n);
  }
}

constexpr KernelTable kNeon{Isa::neon, &axpy_neon, &dot_neon, &matmul_neon};

}  // namespace

namespace detail {
const KernelTable* neon_table() noexcept { return &kNeon; }
}  // namespace detail

}  // namespace omn::kernels

#else

namespace omn::kernels::detail {
const KernelTable* neon_table() noexcept { return nullptr; }
}  // namespace omn::kernels::detail

#endif
