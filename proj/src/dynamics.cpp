// SPDX-License-Identifier: Apache-2.0
#include "thermo/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "thermo/error.hpp"
#include "thermo/simd.hpp"

namespace thermo {

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorKind::InvalidArgument, "time step dt must be positive");
  }
  if (sample_every < 1) throw Error(ErrorKind::InvalidArgument, "sample_every must be >= 1");
}

SimState linear_substep(const SimState& s, const PhysParams& p, double h) {
  SimState out = s;
  const auto& b = *s.basis();
  const int m = static_cast<int>(b.stride());
  auto oscillate = [h](double c_xi, double& d, double& dp) {
    const double omega = std::sqrt(c_xi);
    if (omega == 0.0) {
      d += h * dp;
      return;
    }
    const double cs = std::cos(omega * h);
    const double sn = std::sin(omega * h);
    const double d0 = d;
    const double dp0 = dp;
    d = d0 * cs + dp0 * sn / omega;
    dp = -d0 * omega * sn + dp0 * cs;
  };
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const std::size_t idx = b.index(k, l);
      const double xi = b.xi(k, l);
      if (k + l >= 1) oscillate(p.longitudinal() * xi, out.u.grad[idx], out.v.grad[idx]);
      if (k >= 1 && l >= 1) oscillate(p.mu * xi, out.u.rot[idx], out.v.rot[idx]);
      out.theta.coef[idx] *= std::exp(-xi * h);
    }
  }
  return out;
}

CouplingRhs coupling_rhs(const SimState& s, const PhysParams& p) {
  CouplingRhs rhs{VectorField::zeros(s.basis()), ScalarField::zeros(s.basis())};
  if (p.nu == 0.0) return rhs;
  rhs.dv = grad(s.theta);
  rhs.dv *= -p.nu;
  const ScalarGrid theta = s.theta.samples();
  const ScalarGrid div_v = div(s.v).samples();
  ScalarGrid product(theta.n);
  simd::active().mul(product.values.size(), theta.values.data(), div_v.values.data(),
                     product.values.data());
  rhs.dtheta = forward(s.basis(), product);
  rhs.dtheta *= -p.nu;
  return rhs;
}

namespace {

void check_finite(const SimState& s) {
  auto finite = [](const std::vector<double>& c) {
    for (double x : c) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  };
  if (!finite(s.u.grad) || !finite(s.u.rot) || !finite(s.v.grad) || !finite(s.v.rot) ||
      !finite(s.theta.coef)) {
    throw Error(ErrorKind::NumericalBlowup, "non-finite coefficient", s.t);
  }
}

void check_positive(const SimState& s) {
  const GridExtrema ext = grid_extrema(s.theta);
  if (!(ext.min > 0.0)) {
    std::ostringstream msg;
    msg << "temperature left the positive regime (grid min " << ext.min << ")";
    throw Error(ErrorKind::NonPositiveTemperature, msg.str(), s.t);
  }
}

// Explicit midpoint on (v, theta) under the coupling terms alone.
void coupling_substep(SimState& s, const PhysParams& p, double h) {
  if (p.nu == 0.0) return;
  const CouplingRhs k1 = coupling_rhs(s, p);
  SimState mid = s;
  mid.v += 0.5 * h * k1.dv;
  mid.theta += 0.5 * h * k1.dtheta;
  const CouplingRhs k2 = coupling_rhs(mid, p);
  s.v += h * k2.dv;
  s.theta += h * k2.dtheta;
}

struct Derivative {
  VectorField du;
  VectorField dv;
  ScalarField dtheta;
};

Derivative full_rhs(const SimState& s, const PhysParams& p) {
  CouplingRhs c = coupling_rhs(s, p);
  Derivative d{s.v, std::move(c.dv), std::move(c.dtheta)};
  const auto& b = *s.basis();
  const int m = static_cast<int>(b.stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const std::size_t idx = b.index(k, l);
      const double xi = b.xi(k, l);
      d.dv.grad[idx] -= p.longitudinal() * xi * s.u.grad[idx];
      d.dv.rot[idx] -= p.mu * xi * s.u.rot[idx];
      d.dtheta.coef[idx] -= xi * s.theta.coef[idx];
    }
  }
  return d;
}

SimState advanced(const SimState& s, const Derivative& d, double h) {
  SimState out = s;
  out.u += h * d.du;
  out.v += h * d.dv;
  out.theta += h * d.dtheta;
  return out;
}

SimState rk4_step(const SimState& s, const PhysParams& p, double h) {
  const Derivative k1 = full_rhs(s, p);
  const Derivative k2 = full_rhs(advanced(s, k1, 0.5 * h), p);
  const Derivative k3 = full_rhs(advanced(s, k2, 0.5 * h), p);
  const Derivative k4 = full_rhs(advanced(s, k3, h), p);
  SimState out = s;
  const double w = h / 6.0;
  out.u += w * k1.du;
  out.u += (2.0 * w) * k2.du;
  out.u += (2.0 * w) * k3.du;
  out.u += w * k4.du;
  out.v += w * k1.dv;
  out.v += (2.0 * w) * k2.dv;
  out.v += (2.0 * w) * k3.dv;
  out.v += w * k4.dv;
  out.theta += w * k1.dtheta;
  out.theta += (2.0 * w) * k2.dtheta;
  out.theta += (2.0 * w) * k3.dtheta;
  out.theta += w * k4.dtheta;
  return out;
}

// Advances by h and sets the time to t_new (passed in to avoid accumulating t += h).
SimState advance(const SimState& s, const PhysParams& p, Scheme scheme, double h, double t_new) {
  SimState out;
  if (scheme == Scheme::Rk4Reference) {
    out = rk4_step(s, p, h);
  } else {
    out = linear_substep(s, p, 0.5 * h);
    coupling_substep(out, p, h);
    out = linear_substep(out, p, 0.5 * h);
  }
  out.t = t_new;
  check_finite(out);
  check_positive(out);
  return out;
}

}  // namespace

SimState step(const SimState& s, const PhysParams& p, const StepperConfig& cfg) {
  cfg.validate();
  check_positive(s);
  return advance(s, p, cfg.scheme, cfg.dt, s.t + cfg.dt);
}

SimState simulate(const SimState& initial, const PhysParams& p, const StepperConfig& cfg,
                  double t_end, const DiagnosticsSink& sink) {
  cfg.validate();
  p.validate();
  if (t_end < initial.t) throw Error(ErrorKind::InvalidArgument, "t_end precedes the initial time");
  check_positive(initial);
  check_finite(initial);

  auto emit = [&](const SimState& s) {
    if (sink) sink(s, make_record(s, p));
  };
  emit(initial);

  const double t0 = initial.t;
  const double span = t_end - t0;
  const long long steps = span <= 0.0 ? 0 : static_cast<long long>(std::ceil(span / cfg.dt - 1e-9));
  SimState s = initial;
  for (long long n = 1; n <= steps; ++n) {
    const bool last = n == steps;
    const double t_new = last ? t_end : t0 + static_cast<double>(n) * cfg.dt;
    try {
      s = advance(s, p, cfg.scheme, t_new - s.t, t_new);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << e.what() << " at t=" << t_new;
      throw Error(e.kind(), msg.str(), t_new);
    }
    if (last || n % cfg.sample_every == 0) emit(s);
  }
  return s;
}

}  // namespace thermo
