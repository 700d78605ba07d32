#pragma once

#include "crnkit/kernel_abi.hpp"
#include "crnkit/polynomial.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace crnkit {

// Float copy of a polynomial system, flattened for the inner loops. Each term is a
// coefficient, the component it feeds, and a list of variable factors with repetition
// (x^2 y is stored as x, x, y).
struct CompiledSystem {
  std::size_t dim = 0;
  std::vector<double> coefficient;
  std::vector<std::uint32_t> component;
  std::vector<std::uint32_t> factor_offset;  // size terms + 1
  std::vector<std::uint32_t> factors;

  std::size_t term_count() const { return coefficient.size(); }
};

CompiledSystem compile(const PolynomialSystem& sys);
SystemView view(const CompiledSystem& sys);

enum class KernelIsa { scalar, avx2, neon };
std::string to_string(KernelIsa isa);

bool isa_available(KernelIsa isa);
KernelIsa best_available_isa();
// Throws std::invalid_argument when the ISA is not available on this machine or build.
const KernelTable& kernels(KernelIsa isa);

}  // namespace crnkit
