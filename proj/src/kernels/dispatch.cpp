#include <cstdlib>
#include <stdexcept>
#include <string>

#include "omn/kernels.hpp"

namespace omn::kernels {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return detail::avx2_table() != nullptr && detail::avx2_cpu();
    case Isa::neon: return detail::neon_table() != nullptr;
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) {
    throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
  }
  switch (isa) {
    case Isa::avx2: return *detail::avx2_table();
    case Isa::neon: return *detail::neon_table();
    case Isa::scalar: break;
  }
  return scalar_table();
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("OMN_KERNELS"); forced != nullptr && *forced != '\0') {
    const std::string_view name(forced);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (name == isa_name(isa) && supported(isa)) return table(isa);
    }
    return scalar_table();
  }
  if (supported(Isa::avx2)) return table(Isa::avx2);
  if (supported(Isa::neon)) return table(Isa::neon);
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace omn::kernels
