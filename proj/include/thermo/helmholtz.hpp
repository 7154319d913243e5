// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "thermo/spectral_basis.hpp"

namespace thermo {

// v = gamma + chi with div gamma = 0 (Rotational modes) and curl chi = 0
// (Gradient modes). In this basis the split is a partition of coefficients.
struct HelmholtzPair {
  VectorField gamma;
  VectorField chi;
};

HelmholtzPair project(const VectorField& v);

// Zero-mean phi with grad phi = chi. Throws Error(InvalidArgument) when chi has
// a Rotational coefficient above 1e-12 in magnitude.
ScalarField potential(const VectorField& chi);

}  // namespace thermo
