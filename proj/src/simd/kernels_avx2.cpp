// SPDX-License-Identifier: Apache-2.0
#include "thermo/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define THERMO_HAVE_AVX2_TU 1
#include <immintrin.h>
#endif

namespace thermo::simd {

#if THERMO_HAVE_AVX2_TU
namespace {

// Multiplies and adds are kept separate: a fused multiply-add would round
// differently from the scalar reference.

__attribute__((target("avx2"))) void axpy(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2"))) void axpby(std::size_t n, double a, const double* x, double b,
                                           double* y) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    const __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(ax, by));
  }
  for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

__attribute__((target("avx2"))) void mul(std::size_t n, const double* x, const double* y,
                                         double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

__attribute__((target("avx2"))) double horizontal(__m256d acc) {
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  return (s[0] + s[1]) + (s[2] + s[3]);
}

__attribute__((target("avx2"))) double dot(std::size_t n, const double* x, const double* y) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  double total = horizontal(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

__attribute__((target("avx2"))) double sum(std::size_t n, const double* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = horizontal(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{"avx2", axpy, axpby, mul, dot, sum};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace thermo::simd
