// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "thermo/diagnostics.hpp"
#include "thermo/dynamics.hpp"

namespace thermo {

struct ThetaInfinity {
  // (1/2 ||H-perp v0||^2 + (2mu+lambda)/2 ||div H-perp u0||^2 + integral theta0) / |Omega|,
  // the value fixed by conservation of the curl-free energy.
  double conserved = 0.0;
  // (1/2 ||H-perp v0||^2 + 1/2 ||grad H-perp u0||^2 + integral theta0) / |Omega|,
  // which agrees with the above only when 2mu + lambda = 1.
  double displayed = 0.0;
};

ThetaInfinity theta_infinity(const SimState& initial, const PhysParams& p);

struct WaveModeValue {
  double d = 0.0;
  double d_prime = 0.0;
};

// Solution of d'' + mu xi d = 0. Throws Error(InvalidArgument) unless xi > 0 and mu > 0.
WaveModeValue wave_mode_solution(double d0, double d0_prime, double xi, double mu, double t);

enum class OscillationVerdict { Oscillatory, Zero };

// Rotational-mode coefficients of u and u_t at one sample time.
struct GammaSample {
  double t = 0.0;
  std::vector<double> u_rot;
  std::vector<double> v_rot;
};

GammaSample gamma_sample(const SimState& s);

struct OscillationReport {
  OscillationVerdict verdict = OscillationVerdict::Zero;
  double sup_gamma_l2 = 0.0;
  // max over samples and modes of |coefficient - closed form|, for u and u_t
  double max_deviation = 0.0;
  bool matches_closed_form = true;
};

// The first sample is the initial data. Needs at least 4 periods of the slowest
// active Rotational mode (Error(InsufficientSamples) otherwise). data_norm scales
// the zero test: Zero iff sup ||gamma|| <= 1e-12 * data_norm.
OscillationReport oscillation_check(std::span<const GammaSample> series, const BasisPtr& basis,
                                    double mu, double data_norm, double tolerance = 1e-10);

struct AsymptoticsReport {
  ThetaInfinity theta_infinity;
  double theta_infinity_predicted = 0.0;
  double theta_mean_final = 0.0;
  std::vector<double> times;
  std::vector<double> chi_h_norm_series;
  std::vector<double> chi_t_l2_series;
  // ||theta - theta_inf||_L2 per sample
  std::vector<double> theta_l2_dist_series;
  std::vector<double> gamma_energy_series;
  double gamma_energy_spread = 0.0;  // (max - min) / max |E_gamma|, 0 for vanishing gamma
  OscillationVerdict oscillation_verdict = OscillationVerdict::Zero;
  double decay_ratio = 1.0;
  // chi mechanical energy left at the end, divided by |Omega|
  double residual_chi_energy_density = 0.0;
};

// decay_ratio = mean chi_h_norm over (t_end/2, t_end] / mean over [t_0, t_end/2];
// 1 when the early window mean vanishes. The oscillation verdict is read off the
// gamma energy series.
AsymptoticsReport convergence_report(std::span<const DiagnosticsRecord> series,
                                     const ThetaInfinity& theta_inf, double area);

struct StabilityRow {
  double delta = 0.0;
  double distance_initial = 0.0;
  double distance_final = 0.0;
  double ratio = 0.0;  // R(delta)
};

// ||u1-u2||_H + ||v1-v2||_L2 + ||theta1-theta2||_L2
double state_distance(const SimState& a, const SimState& b);

// For each delta, runs base and base + delta * direction to t_end and reports the
// amplification R(delta). Rejects delta <= 0. Runs are independent and may execute
// concurrently (capped by THERMO_THREADS).
std::vector<StabilityRow> stability_experiment(const BasisPtr& basis, const InitialSpec& base,
                                               const InitialSpec& direction,
                                               std::span<const double> deltas,
                                               const PhysParams& p, const StepperConfig& cfg,
                                               double t_end);

// base + delta * direction, mode lists concatenated and theta_base shifted.
InitialSpec perturbed(const InitialSpec& base, const InitialSpec& direction, double delta);

}  // namespace thermo
