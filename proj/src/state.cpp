// SPDX-License-Identifier: Apache-2.0
#include "thermo/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thermo/error.hpp"

namespace thermo {

void PhysParams::validate() const {
  if (!(mu > 0.0) || !(2.0 * mu + 2.0 * lambda > 0.0)) {
    std::ostringstream msg;
    msg << "Lame moduli violate mu>0 and 2mu+d*lambda>0 (d=2): mu=" << mu << ", lambda=" << lambda;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  if (!std::isfinite(nu)) throw Error(ErrorKind::InvalidArgument, "nu must be finite");
}

GridExtrema grid_extrema(const ScalarField& theta) {
  const ScalarGrid g = theta.samples();
  const auto [lo, hi] = std::minmax_element(g.values.begin(), g.values.end());
  return {*lo, *hi};
}

namespace {

void place_vector_mode(VectorField& field, const VectorModeAmplitude& m) {
  const int K = field.basis->cutoff();
  const bool in_range = m.k >= 0 && m.l >= 0 && m.k <= K && m.l <= K;
  const bool valid = m.kind == VectorKind::Gradient ? m.k + m.l >= 1 : m.k >= 1 && m.l >= 1;
  if (!in_range || !valid) {
    std::ostringstream msg;
    msg << "unknown " << (m.kind == VectorKind::Gradient ? "Gradient" : "Rotational") << " mode ("
        << m.k << "," << m.l << ") for cutoff K=" << K;
    throw Error(ErrorKind::InvalidMode, msg.str());
  }
  field.at(m.kind, m.k, m.l) += m.amplitude;
}

}  // namespace

SimState make_initial(const BasisPtr& basis, const InitialSpec& spec) {
  SimState s{0.0, VectorField::zeros(basis), VectorField::zeros(basis),
             ScalarField::constant(basis, spec.theta_base)};
  for (const auto& m : spec.u_modes) place_vector_mode(s.u, m);
  for (const auto& m : spec.v_modes) place_vector_mode(s.v, m);

  const DomainSpec& d = basis->domain();
  const int K = basis->cutoff();
  for (const auto& m : spec.theta_modes) {
    if (m.k < 0 || m.l < 0 || m.k > K || m.l > K) {
      std::ostringstream msg;
      msg << "unknown scalar mode (" << m.k << "," << m.l << ") for cutoff K=" << K;
      throw Error(ErrorKind::InvalidMode, msg.str());
    }
    // cos(k pi x/Lx) cos(l pi y/Ly) = phi_kl / (c_k c_l)
    const double ck = m.k == 0 ? 1.0 / std::sqrt(d.lx) : std::sqrt(2.0 / d.lx);
    const double cl = m.l == 0 ? 1.0 / std::sqrt(d.ly) : std::sqrt(2.0 / d.ly);
    s.theta.at(m.k, m.l) += m.amplitude / (ck * cl);
  }

  const GridExtrema ext = grid_extrema(s.theta);
  if (!(ext.min > 0.0)) {
    std::ostringstream msg;
    msg << "initial temperature is not positive on the grid (min " << ext.min << ")";
    throw Error(ErrorKind::NonPositiveTemperature, msg.str(), 0.0);
  }
  return s;
}

}  // namespace thermo
