// SPDX-License-Identifier: Apache-2.0
#pragma once

// Time integration of the coefficient-space system
//   u'' = -(2mu+lambda) xi u_grad - mu xi u_rot - nu grad theta
//   theta' = -xi theta - nu P_K(theta div u')
// where P_K is the dealiased projection back onto the cutoff.

#include <functional>

#include "thermo/diagnostics.hpp"
#include "thermo/state.hpp"

namespace thermo {

enum class Scheme { StrangExact, Rk4Reference };

struct StepperConfig {
  double dt = 1e-3;
  Scheme scheme = Scheme::StrangExact;
  int sample_every = 10;

  void validate() const;
};

// Exact flow of the diagonal linear part over a time h (coupling untouched).
SimState linear_substep(const SimState& s, const PhysParams& p, double h);

struct CouplingRhs {
  VectorField dv;
  ScalarField dtheta;
};

// (-nu grad theta, -nu P_K(theta div v)) with the product formed on the grid.
CouplingRhs coupling_rhs(const SimState& s, const PhysParams& p);

// One step of size cfg.dt. Throws Error(NonPositiveTemperature) when theta is not
// positive on the grid before or after the step, Error(NumericalBlowup) on any
// non-finite coefficient.
SimState step(const SimState& s, const PhysParams& p, const StepperConfig& cfg);

using DiagnosticsSink = std::function<void(const SimState&, const DiagnosticsRecord&)>;

// Steps from initial.t to t_end (the last step is shortened if needed), emitting
// a record at the start, every cfg.sample_every steps and at t_end. Step errors
// are rethrown with the failing time attached.
SimState simulate(const SimState& initial, const PhysParams& p, const StepperConfig& cfg,
                  double t_end, const DiagnosticsSink& sink);

}  // namespace thermo
