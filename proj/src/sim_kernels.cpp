#include "crnkit/sim_kernels.hpp"

#include <stdexcept>

namespace crnkit {

CompiledSystem compile(const PolynomialSystem& sys) {
  CompiledSystem out;
  out.dim = sys.dim();
  out.factor_offset.push_back(0);
  for (std::size_t m = 0; m < sys.dim(); ++m) {
    for (const auto& [mono, coef] : sys[m].terms()) {
      out.coefficient.push_back(to_double(coef));
      out.component.push_back(static_cast<std::uint32_t>(m));
      for (std::size_t v = 0; v < mono.dim(); ++v)
        for (std::uint32_t e = 0; e < mono[v]; ++e) out.factors.push_back(static_cast<std::uint32_t>(v));
      out.factor_offset.push_back(static_cast<std::uint32_t>(out.factors.size()));
    }
  }
  return out;
}

SystemView view(const CompiledSystem& sys) {
  return {sys.dim, sys.term_count(), sys.coefficient.data(), sys.component.data(), sys.factor_offset.data(),
          sys.factors.data()};
}

std::string to_string(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::scalar: return "scalar";
    case KernelIsa::avx2: return "avx2";
    case KernelIsa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::scalar: return true;
    case KernelIsa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return detail::avx2_kernels() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case KernelIsa::neon: return detail::neon_kernels() != nullptr;
  }
  return false;
}

KernelIsa best_available_isa() {
  if (isa_available(KernelIsa::avx2)) return KernelIsa::avx2;
  if (isa_available(KernelIsa::neon)) return KernelIsa::neon;
  return KernelIsa::scalar;
}

const KernelTable& kernels(KernelIsa isa) {
  if (!isa_available(isa)) throw std::invalid_argument("kernel ISA '" + to_string(isa) + "' is not available");
  switch (isa) {
    case KernelIsa::avx2: return *detail::avx2_kernels();
    case KernelIsa::neon: return *detail::neon_kernels();
    default: return *detail::scalar_kernels();
  }
}

}  // namespace crnkit
