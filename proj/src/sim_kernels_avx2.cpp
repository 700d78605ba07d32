// Built with -mavx2 on x86. Only raw pointers cross this boundary so no inline library
// code gets compiled for AVX2 and merged into the rest of the program.
#include "crnkit/kernel_abi.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace crnkit::detail {

namespace {

void eval(const SystemView& sys, const double* x, double* out, std::size_t lanes) {
  for (std::size_t i = 0; i < sys.dim * lanes; ++i) out[i] = 0.0;
  const std::size_t vec_end = lanes - lanes % 4;
  for (std::size_t t = 0; t < sys.terms; ++t) {
    double* dst = out + sys.component[t] * lanes;
    const std::uint32_t f0 = sys.factor_offset[t];
    const std::uint32_t f1 = sys.factor_offset[t + 1];
    const __m256d c = _mm256_set1_pd(sys.coefficient[t]);
    std::size_t l = 0;
    for (; l < vec_end; l += 4) {
      __m256d v = c;
      for (std::uint32_t f = f0; f < f1; ++f) v = _mm256_mul_pd(v, _mm256_loadu_pd(x + sys.factors[f] * lanes + l));
      _mm256_storeu_pd(dst + l, _mm256_add_pd(_mm256_loadu_pd(dst + l), v));
    }
    for (; l < lanes; ++l) {
      double v = sys.coefficient[t];
      for (std::uint32_t f = f0; f < f1; ++f) v = v * x[sys.factors[f] * lanes + l];
      dst[l] = dst[l] + v;
    }
  }
}

void axpy(double* out, const double* x, double h, const double* k, std::size_t n) {
  const __m256d hv = _mm256_set1_pd(h);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p = _mm256_mul_pd(hv, _mm256_loadu_pd(k + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(x + i), p));
  }
  for (; i < n; ++i) out[i] = x[i] + h * k[i];
}

void rk4_combine(double* out, const double* y, double h6, const double* k1, const double* k2, const double* k3,
                 const double* k4, std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d hv = _mm256_set1_pd(h6);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(k1 + i), _mm256_mul_pd(two, _mm256_loadu_pd(k2 + i)));
    s = _mm256_add_pd(s, _mm256_mul_pd(two, _mm256_loadu_pd(k3 + i)));
    s = _mm256_add_pd(s, _mm256_loadu_pd(k4 + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(hv, s)));
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

const KernelTable* avx2_kernels() { return &table; }

}  // namespace crnkit::detail

#else

namespace crnkit::detail {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace crnkit::detail

#endif
