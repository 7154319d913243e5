// SPDX-License-Identifier: Apache-2.0
#include "thermo/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thermo/error.hpp"
#include "thermo/helmholtz.hpp"
#include "thermo/parallel.hpp"

namespace thermo {

ThetaInfinity theta_infinity(const SimState& initial, const PhysParams& p) {
  const auto& b = *initial.basis();
  const HelmholtzPair u0 = project(initial.u);
  const HelmholtzPair v0 = project(initial.v);
  double kinetic = 0.0;
  double div_sq = 0.0;
  const int m = static_cast<int>(b.stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const std::size_t idx = b.index(k, l);
      kinetic += v0.chi.grad[idx] * v0.chi.grad[idx];
      div_sq += b.xi(k, l) * u0.chi.grad[idx] * u0.chi.grad[idx];
    }
  }
  const double mass = initial.theta.at(0, 0) * std::sqrt(b.domain().area());
  const double area = b.domain().area();
  // For curl-free fields with these boundary conditions ||grad chi||^2 = ||div chi||^2.
  return {(0.5 * kinetic + 0.5 * p.longitudinal() * div_sq + mass) / area,
          (0.5 * kinetic + 0.5 * div_sq + mass) / area};
}

WaveModeValue wave_mode_solution(double d0, double d0_prime, double xi, double mu, double t) {
  if (!(xi > 0.0) || !(mu > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "wave mode needs xi > 0 and mu > 0");
  }
  const double omega = std::sqrt(mu * xi);
  const double cs = std::cos(omega * t);
  const double sn = std::sin(omega * t);
  return {d0 * cs + d0_prime * sn / omega, -d0 * omega * sn + d0_prime * cs};
}

GammaSample gamma_sample(const SimState& s) { return {s.t, s.u.rot, s.v.rot}; }

OscillationReport oscillation_check(std::span<const GammaSample> series, const BasisPtr& basis,
                                    double mu, double data_norm, double tolerance) {
  if (series.size() < 2) {
    throw Error(ErrorKind::InsufficientSamples, "oscillation check needs at least 2 samples");
  }
  const auto& b = *basis;
  const GammaSample& first = series.front();
  const int m = static_cast<int>(b.stride());

  double slowest_xi = 0.0;
  for (int k = 1; k < m; ++k) {
    for (int l = 1; l < m; ++l) {
      const std::size_t idx = b.index(k, l);
      if (first.u_rot[idx] != 0.0 || first.v_rot[idx] != 0.0) {
        const double xi = b.xi(k, l);
        slowest_xi = slowest_xi == 0.0 ? xi : std::min(slowest_xi, xi);
      }
    }
  }
  if (slowest_xi > 0.0) {
    const double period = 2.0 * std::numbers::pi / std::sqrt(mu * slowest_xi);
    if (series.back().t - first.t < 4.0 * period * (1.0 - 1e-12)) {
      throw Error(ErrorKind::InsufficientSamples,
                  "oscillation check needs at least 4 periods of the slowest active mode");
    }
  }

  OscillationReport report;
  for (const GammaSample& g : series) {
    double norm_sq = 0.0;
    for (int k = 1; k < m; ++k) {
      for (int l = 1; l < m; ++l) {
        const std::size_t idx = b.index(k, l);
        norm_sq += g.u_rot[idx] * g.u_rot[idx];
        const WaveModeValue exact =
            wave_mode_solution(first.u_rot[idx], first.v_rot[idx], b.xi(k, l), mu, g.t - first.t);
        report.max_deviation = std::max({report.max_deviation, std::abs(g.u_rot[idx] - exact.d),
                                         std::abs(g.v_rot[idx] - exact.d_prime)});
      }
    }
    report.sup_gamma_l2 = std::max(report.sup_gamma_l2, std::sqrt(norm_sq));
  }
  report.verdict = report.sup_gamma_l2 <= 1e-12 * data_norm ? OscillationVerdict::Zero
                                                            : OscillationVerdict::Oscillatory;
  report.matches_closed_form = report.max_deviation <= tolerance;
  return report;
}

AsymptoticsReport convergence_report(std::span<const DiagnosticsRecord> series,
                                     const ThetaInfinity& theta_inf, double area) {
  if (series.empty()) throw Error(ErrorKind::InsufficientSamples, "convergence report needs samples");
  AsymptoticsReport r;
  r.theta_infinity = theta_inf;
  r.theta_infinity_predicted = theta_inf.conserved;
  const double target = theta_inf.conserved;
  double e_min = series.front().gamma_energy;
  double e_max = e_min;
  double e_abs = 0.0;
  for (const auto& rec : series) {
    r.times.push_back(rec.t);
    r.chi_h_norm_series.push_back(rec.chi_h_norm);
    r.chi_t_l2_series.push_back(rec.chi_t_l2);
    const double mean = rec.theta_mass / area;
    r.theta_l2_dist_series.push_back(std::sqrt(rec.theta_l2_dist_to_mean * rec.theta_l2_dist_to_mean +
                                               area * (mean - target) * (mean - target)));
    r.gamma_energy_series.push_back(rec.gamma_energy);
    e_min = std::min(e_min, rec.gamma_energy);
    e_max = std::max(e_max, rec.gamma_energy);
    e_abs = std::max(e_abs, std::abs(rec.gamma_energy));
  }
  r.gamma_energy_spread = e_abs > 0.0 ? (e_max - e_min) / e_abs : 0.0;
  r.oscillation_verdict = e_abs > 0.0 ? OscillationVerdict::Oscillatory : OscillationVerdict::Zero;

  const DiagnosticsRecord& last = series.back();
  r.theta_mean_final = last.theta_mass / area;
  r.residual_chi_energy_density = (last.chi_kinetic + last.chi_potential) / area;

  const double t_mid = series.front().t + 0.5 * (last.t - series.front().t);
  double early = 0.0, late = 0.0;
  std::size_t n_early = 0, n_late = 0;
  for (const auto& rec : series) {
    if (rec.t <= t_mid) {
      early += rec.chi_h_norm;
      ++n_early;
    } else {
      late += rec.chi_h_norm;
      ++n_late;
    }
  }
  if (n_early > 0 && n_late > 0 && early > 0.0) {
    r.decay_ratio = (late / static_cast<double>(n_late)) / (early / static_cast<double>(n_early));
  } else {
    r.decay_ratio = 1.0;
  }
  return r;
}

double state_distance(const SimState& a, const SimState& b) {
  return h_norm(a.u - b.u) + l2_norm(a.v - b.v) + l2_norm(a.theta - b.theta);
}

InitialSpec perturbed(const InitialSpec& base, const InitialSpec& direction, double delta) {
  InitialSpec out = base;
  for (auto m : direction.u_modes) {
    m.amplitude *= delta;
    out.u_modes.push_back(m);
  }
  for (auto m : direction.v_modes) {
    m.amplitude *= delta;
    out.v_modes.push_back(m);
  }
  for (auto m : direction.theta_modes) {
    m.amplitude *= delta;
    out.theta_modes.push_back(m);
  }
  out.theta_base += delta * direction.theta_base;
  return out;
}

std::vector<StabilityRow> stability_experiment(const BasisPtr& basis, const InitialSpec& base,
                                               const InitialSpec& direction,
                                               std::span<const double> deltas,
                                               const PhysParams& p, const StepperConfig& cfg,
                                               double t_end) {
  for (double d : deltas) {
    if (!(d > 0.0)) throw Error(ErrorKind::InvalidArgument, "perturbation size delta must be > 0");
  }
  // slot 0 is the unperturbed run
  std::vector<SimState> initial, final;
  initial.push_back(make_initial(basis, base));
  for (double d : deltas) initial.push_back(make_initial(basis, perturbed(base, direction, d)));
  final.resize(initial.size());
  parallel_for(initial.size(), [&](std::size_t i) {
    final[i] = simulate(initial[i], p, cfg, t_end, nullptr);
  });

  std::vector<StabilityRow> rows;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    StabilityRow row;
    row.delta = deltas[i];
    row.distance_initial = state_distance(initial[0], initial[i + 1]);
    row.distance_final = state_distance(final[0], final[i + 1]);
    row.ratio = row.distance_final / row.distance_initial;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace thermo
