#include "omn/kernels.hpp"

namespace omn::kernels {
namespace {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t bulk = n - n % 4;
  for (std::size_t i = 0; i < bulk; i += 4) {
    s[0] += x[i] * y[i];
    s[1] += x[i + 1] * y[i + 1];
    s[2] += x[i + 2] * y[i + 2];
    s[3] += x[i + 3] * y[i + 3];
  }
  double r = (s[0] + s[2]) + (s[1] + s[3]);
  for (std::size_t i = bulk; i < n; ++i) r += x[i] * y[i];
  return r;
}

void matmul_scalar(const double* a, const double* b, double* c, std::size_t m,
                   std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) axpy_scalar(a[i * k + p], b + p * n, crow, n);
  }
}

constexpr KernelTable kScalar{Isa::scalar, &axpy_scalar, &dot_scalar, &matmul_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace omn::kernels
