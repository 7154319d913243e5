// SPDX-License-Identifier: Apache-2.0
#include "thermo/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "thermo/error.hpp"
#include "thermo/helmholtz.hpp"

namespace thermo {

const std::array<std::string_view, DiagnosticsRecord::kColumns>& DiagnosticsRecord::column_names() {
  static const std::array<std::string_view, kColumns> names = {
      "t",          "energy_total",  "energy_kinetic", "energy_div",          "energy_curl",
      "theta_mass", "entropy",       "entropy_production", "fisher_F",        "min_theta",
      "max_theta",  "gamma_energy",  "chi_kinetic",    "chi_potential",       "chi_h_norm",
      "chi_t_l2",   "theta_l2_dist_to_mean"};
  return names;
}

std::array<double, DiagnosticsRecord::kColumns> DiagnosticsRecord::values() const {
  return {t,          energy_total, energy_kinetic, energy_div,         energy_curl,
          theta_mass, entropy,      entropy_production, fisher_F,       min_theta,
          max_theta,  gamma_energy, chi_kinetic,    chi_potential,      chi_h_norm,
          chi_t_l2,   theta_l2_dist_to_mean};
}

namespace {

// sum over modes of weight(xi) * c^2
template <typename Weight>
double weighted_sum(const std::vector<double>& coef, const SpectralBasis& b, Weight weight) {
  const int m = static_cast<int>(b.stride());
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const double c = coef[b.index(k, l)];
      total += weight(b.xi(k, l)) * c * c;
    }
  }
  return total;
}

double sum_squares(const std::vector<double>& coef, const SpectralBasis& b) {
  return weighted_sum(coef, b, [](double) { return 1.0; });
}

ScalarGrid positive_samples(const ScalarField& theta, const char* what) {
  ScalarGrid g = theta.samples();
  const double lo = *std::min_element(g.values.begin(), g.values.end());
  if (!(lo > 0.0)) {
    std::ostringstream msg;
    msg << what << " requires a positive field (grid min " << lo << ")";
    throw Error(ErrorKind::NonPositiveTemperature, msg.str());
  }
  return g;
}

}  // namespace

EnergyParts energy(const SimState& s, const PhysParams& p) {
  const auto& b = *s.basis();
  EnergyParts e;
  e.kinetic = 0.5 * (sum_squares(s.v.grad, b) + sum_squares(s.v.rot, b));
  e.div_part = 0.5 * p.longitudinal() * weighted_sum(s.u.grad, b, [](double xi) { return xi; });
  e.curl_part = 0.5 * p.mu * weighted_sum(s.u.rot, b, [](double xi) { return xi; });
  e.theta_mass = s.theta.at(0, 0) * std::sqrt(b.domain().area());
  e.total = e.kinetic + e.div_part + e.curl_part + e.theta_mass;
  return e;
}

EntropyPair entropy_and_production(const SimState& s) {
  const auto& b = *s.basis();
  const ScalarGrid theta = positive_samples(s.theta, "entropy");
  const VectorGrid g = gradient_samples(s.theta);
  ScalarGrid log_theta(theta.n), production(theta.n);
  for (std::size_t i = 0; i < theta.values.size(); ++i) {
    const double th = theta.values[i];
    log_theta.values[i] = std::log(th);
    production.values[i] = (g.x.values[i] * g.x.values[i] + g.y.values[i] * g.y.values[i]) / (th * th);
  }
  return {b.integrate(log_theta), b.integrate(production)};
}

namespace {

double fisher_information(const ScalarField& theta) {
  const auto& b = *theta.basis;
  const ScalarGrid th = positive_samples(theta, "Fisher information");
  const VectorGrid g = gradient_samples(theta);
  ScalarGrid integrand(th.n);
  for (std::size_t i = 0; i < th.values.size(); ++i) {
    integrand.values[i] =
        (g.x.values[i] * g.x.values[i] + g.y.values[i] * g.y.values[i]) / th.values[i];
  }
  return b.integrate(integrand);
}

}  // namespace

double fisher_functional(const SimState& s, const PhysParams& p) {
  const auto& b = *s.basis();
  auto xi1 = [](double xi) { return xi; };
  auto xi2 = [](double xi) { return xi * xi; };
  const double div_v = weighted_sum(s.v.grad, b, xi1);
  const double curl_v = weighted_sum(s.v.rot, b, xi1);
  const double grad_div_u = weighted_sum(s.u.grad, b, xi2);
  const double curl_curl_u = weighted_sum(s.u.rot, b, xi2);
  return 0.5 * (div_v + curl_v + p.longitudinal() * grad_div_u + p.mu * curl_curl_u +
                fisher_information(s.theta));
}

double fisher_dissipation_bound(const SimState& s, const PhysParams& p) {
  const auto& b = *s.basis();
  const ScalarGrid th = positive_samples(s.theta, "Fisher dissipation");
  ScalarGrid log_theta(th.n);
  for (std::size_t i = 0; i < th.values.size(); ++i) log_theta.values[i] = std::log(th.values[i]);
  const HessianGrid hess = hessian_samples(forward(s.basis(), log_theta));
  const VectorGrid g = gradient_samples(s.theta);
  const ScalarGrid div_v = div(s.v).samples();

  ScalarGrid integrand(th.n);
  for (std::size_t i = 0; i < th.values.size(); ++i) {
    const double xx = hess.xx.values[i];
    const double xy = hess.xy.values[i];
    const double yy = hess.yy.values[i];
    const double hess_sq = xx * xx + 2.0 * xy * xy + yy * yy;
    const double grad_sq = g.x.values[i] * g.x.values[i] + g.y.values[i] * g.y.values[i];
    integrand.values[i] =
        -th.values[i] * hess_sq - 0.5 * p.nu * grad_sq / th.values[i] * div_v.values[i];
  }
  return b.integrate(integrand);
}

DecomposedEnergies decomposed_energies(const SimState& s, const PhysParams& p) {
  const HelmholtzPair u = project(s.u);
  const HelmholtzPair v = project(s.v);
  const auto& b = *s.basis();
  auto xi1 = [](double xi) { return xi; };
  DecomposedEnergies e;
  e.gamma_energy = 0.5 * sum_squares(v.gamma.rot, b) + 0.5 * p.mu * weighted_sum(u.gamma.rot, b, xi1);
  e.chi_kinetic = 0.5 * sum_squares(v.chi.grad, b);
  e.chi_potential = 0.5 * p.longitudinal() * weighted_sum(u.chi.grad, b, xi1);
  e.chi_energy_mech = e.chi_kinetic + e.chi_potential;
  e.theta_mass = s.theta.at(0, 0) * std::sqrt(b.domain().area());
  return e;
}

DiagnosticsRecord make_record(const SimState& s, const PhysParams& p) {
  const auto& b = *s.basis();
  DiagnosticsRecord r;
  r.t = s.t;
  const EnergyParts e = energy(s, p);
  r.energy_total = e.total;
  r.energy_kinetic = e.kinetic;
  r.energy_div = e.div_part;
  r.energy_curl = e.curl_part;
  r.theta_mass = e.theta_mass;
  const EntropyPair ent = entropy_and_production(s);
  r.entropy = ent.entropy;
  r.entropy_production = ent.production;
  r.fisher_F = fisher_functional(s, p);
  const GridExtrema ext = grid_extrema(s.theta);
  r.min_theta = ext.min;
  r.max_theta = ext.max;
  const DecomposedEnergies de = decomposed_energies(s, p);
  r.gamma_energy = de.gamma_energy;
  r.chi_kinetic = de.chi_kinetic;
  r.chi_potential = de.chi_potential;
  r.chi_h_norm = std::sqrt(weighted_sum(s.u.grad, b, [](double xi) { return xi; }));
  r.chi_t_l2 = std::sqrt(sum_squares(s.v.grad, b));
  const double mean_coef = s.theta.at(0, 0);
  r.theta_l2_dist_to_mean = std::sqrt(std::max(0.0, sum_squares(s.theta.coef, b) - mean_coef * mean_coef));
  return r;
}

FisherDissipationReport fisher_dissipation_residual(std::span<const SimState> series,
                                                    const PhysParams& p) {
  if (series.size() < 3) {
    throw Error(ErrorKind::InsufficientSamples,
                "Fisher dissipation check needs at least 3 samples");
  }
  const double h = series[1].t - series[0].t;
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "samples must advance in time");
  for (std::size_t i = 2; i < series.size(); ++i) {
    const double step = series[i].t - series[i - 1].t;
    if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(series[i].t))) {
      throw Error(ErrorKind::InvalidArgument, "samples must be uniformly spaced");
    }
  }
  std::vector<double> F(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) F[i] = fisher_functional(series[i], p);

  FisherDissipationReport report;
  report.max_residual = -std::numeric_limits<double>::infinity();
  report.max_dF_dt = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    FisherInterval iv;
    iv.t = series[i].t;
    iv.dF_dt = (F[i + 1] - F[i - 1]) / (2.0 * h);
    iv.bound = fisher_dissipation_bound(series[i], p);
    iv.residual = iv.dF_dt - iv.bound;
    report.max_residual = std::max(report.max_residual, iv.residual);
    report.max_dF_dt = std::max(report.max_dF_dt, iv.dF_dt);
    report.intervals.push_back(iv);
  }
  return report;
}

double InequalityReport::sqrt_log_constant() { return 1.0 + std::sqrt(2.0) / 2.0 + 2.0 / 8.0; }

double gradient_laplacian_ratio(const ScalarField& v) {
  const auto& b = *v.basis;
  const double grad_sq = weighted_sum(v.coef, b, [](double xi) { return xi; });
  const double lap_sq = weighted_sum(v.coef, b, [](double xi) { return xi * xi; });
  if (lap_sq == 0.0) return 0.0;
  return std::sqrt(b.min_nonzero_xi() * grad_sq / lap_sq);
}

InequalityReport inequality_checks(const ScalarField& w) {
  const auto& b = *w.basis;
  InequalityReport r;
  r.gradient_laplacian_ratio = gradient_laplacian_ratio(w);

  const ScalarGrid val = positive_samples(w, "Hessian inequality");
  const VectorGrid g = gradient_samples(w);
  const HessianGrid h = hessian_samples(w);
  ScalarGrid lhs(val.n), rhs(val.n);
  for (std::size_t i = 0; i < val.values.size(); ++i) {
    const double f = val.values[i];
    const double gx = g.x.values[i], gy = g.y.values[i];
    const double root = std::sqrt(f);
    // Hess sqrt(w) = Hess w / (2 sqrt w) - grad w grad w^T / (4 w^(3/2))
    const double sxx = h.xx.values[i] / (2.0 * root) - gx * gx / (4.0 * f * root);
    const double sxy = h.xy.values[i] / (2.0 * root) - gx * gy / (4.0 * f * root);
    const double syy = h.yy.values[i] / (2.0 * root) - gy * gy / (4.0 * f * root);
    // Hess log w = Hess w / w - grad w grad w^T / w^2
    const double lxx = h.xx.values[i] / f - gx * gx / (f * f);
    const double lxy = h.xy.values[i] / f - gx * gy / (f * f);
    const double lyy = h.yy.values[i] / f - gy * gy / (f * f);
    lhs.values[i] = sxx * sxx + 2.0 * sxy * sxy + syy * syy;
    rhs.values[i] = f * (lxx * lxx + 2.0 * lxy * lxy + lyy * lyy);
  }
  r.sqrt_hessian_lhs = b.integrate(lhs);
  r.log_hessian_rhs = b.integrate(rhs);
  r.sqrt_log_ratio = r.log_hessian_rhs > 0.0 ? r.sqrt_hessian_lhs / r.log_hessian_rhs : 0.0;
  return r;
}

TemperatureBounds temperature_bounds(std::span<const DiagnosticsRecord> series) {
  if (series.empty()) throw Error(ErrorKind::InsufficientSamples, "temperature bounds need samples");
  TemperatureBounds tb{series.front().min_theta, series.front().max_theta};
  for (const auto& r : series) {
    tb.inf_min_theta = std::min(tb.inf_min_theta, r.min_theta);
    tb.sup_max_theta = std::max(tb.sup_max_theta, r.max_theta);
  }
  return tb;
}

}  // namespace thermo
