#pragma once

// Kept free of library headers: the ISA-specific kernel sources include only this.
#include <cstddef>
#include <cstdint>

namespace crnkit {

// Flat view of a compiled system.
struct SystemView {
  std::size_t dim;
  std::size_t terms;
  const double* coefficient;
  const std::uint32_t* component;
  const std::uint32_t* factor_offset;
  const std::uint32_t* factors;
};

// State layout is structure-of-arrays: component m of lane l lives at x[m * lanes + l].
struct KernelTable {
  // out = f(x)
  void (*eval)(const SystemView& sys, const double* x, double* out, std::size_t lanes);
  // out = x + h * k, elementwise over n entries
  void (*axpy)(double* out, const double* x, double h, const double* k, std::size_t n);
  // out = y + h6 * (((k1 + 2 k2) + 2 k3) + k4)
  void (*rk4_combine)(double* out, const double* y, double h6, const double* k1, const double* k2,
                      const double* k3, const double* k4, std::size_t n);
};

namespace detail {
const KernelTable* scalar_kernels();
const KernelTable* avx2_kernels();  // nullptr when not compiled in
const KernelTable* neon_kernels();  // nullptr when not compiled in
}  // namespace detail

}  // namespace crnkit
