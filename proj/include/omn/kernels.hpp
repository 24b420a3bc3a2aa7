#pragma once
// Dense inner-loop kernels for the small-matrix layer.
//
// Every ISA variant evaluates exactly the same sequence of IEEE operations as
// the scalar reference (lane-wise mul/add, no FMA, fixed reduction tree), so
// results are bitwise identical whichever variant the dispatcher picks.

#include <cstddef>
#include <span>
#include <string_view>

namespace omn::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // Four interleaved partial sums s0..s3 over the bulk, combined as
  // (s0 + s2) + (s1 + s3), then the tail added in order.
  double (*dot)(const double* x, const double* y, std::size_t n);
  // Row-major c(m x n) = a(m x k) * b(k x n), accumulated over k in order.
  void (*matmul)(const double* a, const double* b, double* c, std::size_t m,
                 std::size_t k, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// True when the variant is compiled in and the running CPU supports it.
bool supported(Isa isa) noexcept;

/// Throws std::invalid_argument for an unsupported variant.
const KernelTable& table(Isa isa);

/// Best supported variant, chosen once per process. The environment variable
/// OMN_KERNELS=scalar|avx2|neon forces a specific one.
const KernelTable& active();

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

namespace detail {
// Defined in the per-ISA translation units; nullptr when not compiled in.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;
bool avx2_cpu() noexcept;
}  // namespace detail

}  // namespace omn::kernels
