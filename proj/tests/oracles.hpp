// SPDX-License-Identifier: Apache-2.0
#pragma once

// Closed-form mode functions and adaptive quadrature used as reference values.
// Nothing here calls into the library.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

inline double cos_mode(int k, double x, double len) {
  const double c = k == 0 ? std::sqrt(1.0 / len) : std::sqrt(2.0 / len);
  return c * std::cos(k * pi * x / len);
}

inline double sin_mode(int k, double x, double len) {
  return std::sqrt(2.0 / len) * std::sin(k * pi * x / len);
}

inline double integrate_1d(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 4, 1e-13);
}

inline double integrate_2d(const std::function<double(double, double)>& f, double lx, double ly) {
  return integrate_1d(
      [&](double x) { return integrate_1d([&](double y) { return f(x, y); }, 0.0, ly); }, 0.0, lx);
}

}  // namespace oracle
