// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data-parallel inner loops used by the transforms and field arithmetic.
//
// Every backend performs the same floating-point operations in the same order
// (no fused multiply-add, four-lane blocked reductions), so all backends are
// bitwise interchangeable. The scalar table is the reference.

#include <cstddef>
#include <string_view>

namespace thermo::simd {

struct KernelTable {
  std::string_view name;
  // y[i] += a * x[i]
  void (*axpy)(std::size_t n, double a, const double* x, double* y);
  // y[i] = a * x[i] + b * y[i]
  void (*axpby)(std::size_t n, double a, const double* x, double b, double* y);
  // out[i] = x[i] * y[i]
  void (*mul)(std::size_t n, const double* x, const double* y, double* out);
  // sum_i x[i] * y[i], four interleaved partial sums combined as (s0 + s1) + (s2 + s3)
  double (*dot)(std::size_t n, const double* x, const double* y);
  // sum_i x[i], same blocking as dot
  double (*sum)(std::size_t n, const double* x);
};

const KernelTable& scalar_kernels();

// nullptr when the running CPU (or the build) lacks AVX2.
const KernelTable* avx2_kernels();

// Backend chosen once at first use. THERMO_SIMD=scalar forces the reference path.
const KernelTable& active();

}  // namespace thermo::simd
