#include "crnkit/kernel_abi.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace crnkit::detail {

namespace {

void eval(const SystemView& sys, const double* x, double* out, std::size_t lanes) {
  for (std::size_t i = 0; i < sys.dim * lanes; ++i) out[i] = 0.0;
  const std::size_t vec_end = lanes - lanes % 2;
  for (std::size_t t = 0; t < sys.terms; ++t) {
    double* dst = out + sys.component[t] * lanes;
    const std::uint32_t f0 = sys.factor_offset[t];
    const std::uint32_t f1 = sys.factor_offset[t + 1];
    const float64x2_t c = vdupq_n_f64(sys.coefficient[t]);
    std::size_t l = 0;
    for (; l < vec_end; l += 2) {
      float64x2_t v = c;
      for (std::uint32_t f = f0; f < f1; ++f) v = vmulq_f64(v, vld1q_f64(x + sys.factors[f] * lanes + l));
      vst1q_f64(dst + l, vaddq_f64(vld1q_f64(dst + l), v));
    }
    for (; l < lanes; ++l) {
      double v = sys.coefficient[t];
      for (std::uint32_t f = f0; f < f1; ++f) v = v * x[sys.factors[f] * lanes + l];
      dst[l] = dst[l] + v;
    }
  }
}

void axpy(double* out, const double* x, double h, const double* k, std::size_t n) {
  const float64x2_t hv = vdupq_n_f64(h);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vaddq_f64(vld1q_f64(x + i), vmulq_f64(hv, vld1q_f64(k + i))));
  for (; i < n; ++i) out[i] = x[i] + h * k[i];
}

void rk4_combine(double* out, const double* y, double h6, const double* k1, const double* k2, const double* k3,
                 const double* k4, std::size_t n) {
  const float64x2_t two = vdupq_n_f64(2.0);
  const float64x2_t hv = vdupq_n_f64(h6);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t s = vaddq_f64(vld1q_f64(k1 + i), vmulq_f64(two, vld1q_f64(k2 + i)));
    s = vaddq_f64(s, vmulq_f64(two, vld1q_f64(k3 + i)));
    s = vaddq_f64(s, vld1q_f64(k4 + i));
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(hv, s)));
  }
  for (; i < n; ++i) {
    double s = k1[i] + 2.0 * k2[i];
    s = s + 2.0 * k3[i];
    s = s + k4[i];
    out[i] = y[i] + h6 * s;
  }
}

const KernelTable table{eval, axpy, rk4_combine};

}  // namespace

const KernelTable* neon_kernels() { return &table; }

}  // namespace crnkit::detail

#else

namespace crnkit::detail {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace crnkit::detail

#endif
