#include "crnkit/kernel_abi.hpp"

namespace crnkit::detail {

namespace {

void eval(const SystemView& sys, const double* x, double* out, std::size_t lanes) {
  for (std::size_t i = 0; i < sys.dim * lanes; ++i) out[i] = 0.0;
  for (std::size_t t = 0; t < sys.terms; ++t) {
    double* dst = out + sys.component[t] * lanes;
    for (std::size_t l = 0; l < lanes; ++l) {
      double v = sys.coefficient[t];
      for (std::uint32_t f = sys.factor_offset[t]; f < sys.factor_offset[t + 1]; ++f) v = v * x[sys.factors[f] * lanes + l];
      dst[l] = dst[l] + v;
    }
  }
}

void axpy(double* out, const double* x, double h, const double* k, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + h * k[i];
}

void rk4_combine(double* out, const double* y, double h6, const double* k1, const double* k2, const double* k3,
                 const double* k4, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = k1[i] + 2.0 * k2[i];
    s = s + 2.0 * k3[i];
    s = s + k4[i];
    out[i] = y[i] + h6 * s;
  }
}

const KernelTable table{eval, axpy, rk4_combine};

}  // namespace

const KernelTable* scalar_kernels() { return &table; }

}  // namespace crnkit::detail
