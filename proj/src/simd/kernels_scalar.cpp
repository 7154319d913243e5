// SPDX-License-Identifier: Apache-2.0
#include "thermo/simd.hpp"

namespace thermo::simd {
namespace {

void axpy(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpby(std::size_t n, double a, const double* x, double b, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void mul(std::size_t n, const double* x, const double* y, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

double dot(std::size_t n, const double* x, const double* y) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t lane = 0; lane < 4; ++lane) s[lane] += x[i + lane] * y[i + lane];
  }
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double sum(std::size_t n, const double* x) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t lane = 0; lane < 4; ++lane) s[lane] += x[i + lane];
  }
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += x[i];
  return total;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", axpy, axpby, mul, dot, sum};
  return table;
}

}  // namespace thermo::simd
