// SPDX-License-Identifier: Apache-2.0
#include "thermo/helmholtz.hpp"

#include <cmath>

#include "thermo/error.hpp"

namespace thermo {

HelmholtzPair project(const VectorField& v) {
  HelmholtzPair pair{VectorField::zeros(v.basis), VectorField::zeros(v.basis)};
  pair.gamma.rot = v.rot;
  pair.chi.grad = v.grad;
  return pair;
}

ScalarField potential(const VectorField& chi) {
  constexpr double kTolerance = 1e-12;
  for (double c : chi.rot) {
    if (std::abs(c) > kTolerance) {
      throw Error(ErrorKind::InvalidArgument,
                  "potential() requires a curl-free field (nonzero Rotational coefficient)");
    }
  }
  ScalarField phi = ScalarField::zeros(chi.basis);
  const int m = static_cast<int>(chi.basis->stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == 0 && l == 0) continue;
      const std::size_t idx = chi.basis->index(k, l);
      phi.coef[idx] = chi.grad[idx] / std::sqrt(chi.basis->xi(k, l));
    }
  }
  return phi;
}

}  // namespace thermo
