// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "thermo/spectral_basis.hpp"

namespace thermo {

// Lame moduli and the thermal coupling constant.
struct PhysParams {
  double mu = 1.0;
  double lambda = 1.0;
  double nu = 0.5;

  // mu > 0 and 2 mu + d lambda > 0 with d = 2.
  void validate() const;
  double longitudinal() const { return 2.0 * mu + lambda; }
};

struct SimState {
  double t = 0.0;
  VectorField u;
  VectorField v;  // u_t
  ScalarField theta;

  const BasisPtr& basis() const { return u.basis; }
};

struct VectorModeAmplitude {
  VectorKind kind = VectorKind::Gradient;
  int k = 0;
  int l = 0;
  double amplitude = 0.0;  // coefficient on the L2-normalized mode
};

struct ScalarModeAmplitude {
  int k = 0;
  int l = 0;
  double amplitude = 0.0;  // peak value: amplitude * cos(k pi x / Lx) cos(l pi y / Ly)
};

struct InitialSpec {
  std::vector<VectorModeAmplitude> u_modes;
  std::vector<VectorModeAmplitude> v_modes;
  double theta_base = 1.0;
  std::vector<ScalarModeAmplitude> theta_modes;
};

// Throws Error(NonPositiveTemperature) for a non-positive grid minimum of theta and
// Error(InvalidMode) for indices outside the mode set.
SimState make_initial(const BasisPtr& basis, const InitialSpec& spec);

// Minimum and maximum of theta over the collocation grid.
struct GridExtrema {
  double min = 0.0;
  double max = 0.0;
};
GridExtrema grid_extrema(const ScalarField& theta);

}  // namespace thermo
