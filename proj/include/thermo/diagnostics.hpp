// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "thermo/state.hpp"

namespace thermo {

// One sampled row of every monitored functional. Column order is the CSV order.
struct DiagnosticsRecord {
  double t = 0.0;
  double energy_total = 0.0;
  double energy_kinetic = 0.0;
  double energy_div = 0.0;
  double energy_curl = 0.0;
  double theta_mass = 0.0;
  double entropy = 0.0;             // integral of log theta
  double entropy_production = 0.0;  // integral of |grad log theta|^2
  double fisher_F = 0.0;
  double min_theta = 0.0;
  double max_theta = 0.0;
  double gamma_energy = 0.0;
  double chi_kinetic = 0.0;
  double chi_potential = 0.0;
  double chi_h_norm = 0.0;
  double chi_t_l2 = 0.0;
  double theta_l2_dist_to_mean = 0.0;

  static constexpr std::size_t kColumns = 17;
  static const std::array<std::string_view, kColumns>& column_names();
  std::array<double, kColumns> values() const;
};

struct EnergyParts {
  double total = 0.0;
  double kinetic = 0.0;     // 1/2 ||v||^2
  double div_part = 0.0;    // (2 mu + lambda)/2 ||div u||^2
  double curl_part = 0.0;   // mu/2 ||curl u||^2
  double theta_mass = 0.0;  // integral of theta
};

EnergyParts energy(const SimState& s, const PhysParams& p);

struct EntropyPair {
  double entropy = 0.0;
  double production = 0.0;
};

// Throws Error(NonPositiveTemperature) when theta is not positive on the grid.
EntropyPair entropy_and_production(const SimState& s);

// 1/2 (||div v||^2 + ||curl v||^2 + (2mu+lambda)||grad div u||^2
//      + mu ||curl curl u||^2 + integral |grad theta|^2 / theta)
double fisher_functional(const SimState& s, const PhysParams& p);

// Right-hand side of the Fisher dissipation inequality:
//   -integral theta |Hess log theta|^2 - nu/2 integral (|grad theta|^2/theta) div v.
// Hess log theta comes from log theta projected onto the basis.
double fisher_dissipation_bound(const SimState& s, const PhysParams& p);

struct DecomposedEnergies {
  double gamma_energy = 0.0;     // 1/2 ||gamma_t||^2 + mu/2 ||curl gamma||^2
  double chi_kinetic = 0.0;      // 1/2 ||chi_t||^2
  double chi_potential = 0.0;    // (2mu+lambda)/2 ||div chi||^2
  double chi_energy_mech = 0.0;  // chi_kinetic + chi_potential
  double theta_mass = 0.0;
};

DecomposedEnergies decomposed_energies(const SimState& s, const PhysParams& p);

DiagnosticsRecord make_record(const SimState& s, const PhysParams& p);

struct FisherInterval {
  double t = 0.0;          // center sample time
  double dF_dt = 0.0;      // centered difference
  double bound = 0.0;      // fisher_dissipation_bound at the center
  double residual = 0.0;   // dF_dt - bound (the inequality asks for <= 0)
};

struct FisherDissipationReport {
  std::vector<FisherInterval> intervals;
  double max_residual = 0.0;
  double max_dF_dt = 0.0;
};

// Needs >= 3 uniformly spaced samples; throws Error(InsufficientSamples) otherwise.
FisherDissipationReport fisher_dissipation_residual(std::span<const SimState> series,
                                                    const PhysParams& p);

struct InequalityReport {
  // ||grad v|| <= C ||Laplacian v|| with C = 1/sqrt(xi_min); ratio = ||grad v|| / (C ||Lap v||).
  double gradient_laplacian_ratio = 0.0;
  // integral |Hess w^(1/2)|^2 <= C integral w |Hess log w|^2, C = 1 + sqrt(2)/2 + 1/4.
  double sqrt_hessian_lhs = 0.0;
  double log_hessian_rhs = 0.0;
  double sqrt_log_ratio = 0.0;  // lhs / rhs, 0 when both vanish

  static double sqrt_log_constant();
};

double gradient_laplacian_ratio(const ScalarField& v);
// Throws Error(NonPositiveTemperature) unless w is positive on the grid.
InequalityReport inequality_checks(const ScalarField& w);

struct TemperatureBounds {
  double inf_min_theta = 0.0;
  double sup_max_theta = 0.0;
};

TemperatureBounds temperature_bounds(std::span<const DiagnosticsRecord> series);

}  // namespace thermo
