// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"
#include "thermo/config.hpp"
#include "thermo/diagnostics.hpp"
#include "thermo/dynamics.hpp"

namespace {

using namespace thermo;
using oracle::pi;

SimState rest_state(const BasisPtr& b, double theta = 1.0) {
  return {0.0, VectorField::zeros(b), VectorField::zeros(b), ScalarField::constant(b, theta)};
}

TEST(Energy, ConstantTemperature) {
  const auto b = testutil::basis(4);
  const EnergyParts e = energy(rest_state(b, 1.3), PhysParams{});
  EXPECT_NEAR(e.total, 1.3 * pi * pi, 1e-13);
  EXPECT_EQ(e.kinetic, 0.0);
}

TEST(Energy, CosineDivergence) {
  const auto b = testutil::basis(4);
  SimState s = rest_state(b);
  // div G_10 = -sqrt(2)/pi cos x, so this coefficient gives div u = -cos x
  s.u.at(VectorKind::Gradient, 1, 0) = pi / std::sqrt(2.0);
  const double cos_sq = oracle::integrate_2d([](double x, double) { return std::cos(x) * std::cos(x); }, pi, pi);
  const EnergyParts e = energy(s, PhysParams{1.0, 1.0, 0.5});
  EXPECT_NEAR(e.div_part, 1.5 * cos_sq, 1e-12);
  EXPECT_NEAR(e.total, 1.5 * cos_sq + pi * pi, 1e-12);
  EXPECT_NEAR(e.total, 7.0 * pi * pi / 4.0, 1e-12);
  EXPECT_NEAR(e.total, 17.2718, 1e-4);
}

TEST(Energy, QuadraticScalingAndPartition) {
  const auto b = testutil::basis(6);
  std::mt19937_64 rng(3);
  SimState s = rest_state(b);
  s.u = testutil::random_vector(b, rng);
  s.v = testutil::random_vector(b, rng);
  const PhysParams p{0.8, 0.3, 0.5};
  const EnergyParts e1 = energy(s, p);
  EXPECT_NEAR(e1.total, e1.kinetic + e1.div_part + e1.curl_part + e1.theta_mass, 1e-12 * e1.total);
  SimState s2 = s;
  s2.u *= 3.0;
  s2.v *= 3.0;
  const EnergyParts e2 = energy(s2, p);
  EXPECT_NEAR(e2.kinetic, 9.0 * e1.kinetic, 1e-12 * e2.kinetic);
  EXPECT_NEAR(e2.div_part, 9.0 * e1.div_part, 1e-12 * e2.div_part);
  EXPECT_NEAR(e2.curl_part, 9.0 * e1.curl_part, 1e-12 * e2.curl_part);
}

TEST(Entropy, ConstantTemperatures) {
  const auto b = testutil::basis(4);
  EntropyPair e = entropy_and_production(rest_state(b, 2.0));
  EXPECT_NEAR(e.entropy, pi * pi * std::log(2.0), 1e-13);
  EXPECT_NEAR(e.production, 0.0, 1e-15);
  e = entropy_and_production(rest_state(b, std::exp(1.0)));
  EXPECT_NEAR(e.entropy, pi * pi, 1e-13);
}

TEST(Entropy, CosinePerturbationAgainstAdaptiveQuadrature) {
  const auto b = testutil::basis(16);
  InitialSpec spec;
  spec.theta_modes = {{1, 0, 0.1}};
  const SimState s = make_initial(b, spec);
  const EntropyPair e = entropy_and_production(s);
  const double ent = pi * oracle::integrate_1d([](double x) { return std::log(1.0 + 0.1 * std::cos(x)); }, 0, pi);
  const double prod = pi * oracle::integrate_1d(
                               [](double x) {
                                 const double g = -0.1 * std::sin(x) / (1.0 + 0.1 * std::cos(x));
                                 return g * g;
                               },
                               0, pi);
  EXPECT_NEAR(e.entropy, ent, 1e-8 * std::abs(ent));
  EXPECT_NEAR(e.production, prod, 1e-8 * prod);
}

TEST(Entropy, RejectsNonPositiveTemperature) {
  const auto b = testutil::basis(4);
  SimState s = rest_state(b);
  s.theta.at(1, 1) = 5.0;
  testutil::expect_error([&] { entropy_and_production(s); }, ErrorKind::NonPositiveTemperature);
}

TEST(Fisher, ReferenceValues) {
  const auto b = testutil::basis(4);
  EXPECT_NEAR(fisher_functional(rest_state(b, 3.0), PhysParams{}), 0.0, 1e-14);

  SimState s = rest_state(b);
  s.u.at(VectorKind::Gradient, 1, 0) = 1.0;
  EXPECT_NEAR(fisher_functional(s, PhysParams{1.0, 1.0, 0.5}), 1.5, 1e-13);

  s = rest_state(b);
  s.v.at(VectorKind::Rotational, 1, 1) = 1.0;
  EXPECT_NEAR(fisher_functional(s, PhysParams{}), 1.0, 1e-13);
}

TEST(Fisher, TemperatureTermAgainstQuadrature) {
  const auto b = testutil::basis(16);
  InitialSpec spec;
  spec.theta_modes = {{0, 1, 0.3}};
  const SimState s = make_initial(b, spec);
  const double expected =
      0.5 * pi *
      oracle::integrate_1d([](double y) { return std::pow(0.3 * std::sin(y), 2) / (1.0 + 0.3 * std::cos(y)); }, 0, pi);
  EXPECT_NEAR(fisher_functional(s, PhysParams{}), expected, 1e-9 * expected);
}

TEST(Decomposed, PureAndMixedData) {
  const auto b = testutil::basis(6);
  const PhysParams p{1.2, 0.7, 0.5};
  SimState s = rest_state(b);
  s.u.at(VectorKind::Rotational, 1, 2) = 0.4;
  s.v.at(VectorKind::Rotational, 2, 2) = 0.1;
  EXPECT_EQ(decomposed_energies(s, p).chi_energy_mech, 0.0);

  s = rest_state(b);
  s.u.at(VectorKind::Gradient, 1, 2) = 0.4;
  s.v.at(VectorKind::Gradient, 0, 2) = 0.1;
  EXPECT_EQ(decomposed_energies(s, p).gamma_energy, 0.0);

  std::mt19937_64 rng(12);
  s.u = testutil::random_vector(b, rng);
  s.v = testutil::random_vector(b, rng);
  const DecomposedEnergies d = decomposed_energies(s, p);
  const EnergyParts e = energy(s, p);
  const double mech = e.kinetic + e.div_part + e.curl_part;
  EXPECT_NEAR(d.gamma_energy + d.chi_energy_mech, mech, 1e-12 * mech);
  EXPECT_NEAR(d.chi_energy_mech, d.chi_kinetic + d.chi_potential, 1e-14 * mech);
}

TEST(Record, ColumnOrderAndConsistency) {
  const auto& names = DiagnosticsRecord::column_names();
  const std::array<std::string_view, 17> expected = {
      "t",          "energy_total",   "energy_kinetic", "energy_div",    "energy_curl",  "theta_mass",
      "entropy",    "entropy_production", "fisher_F", "min_theta",     "max_theta",    "gamma_energy",
      "chi_kinetic", "chi_potential", "chi_h_norm",     "chi_t_l2",      "theta_l2_dist_to_mean"};
  EXPECT_EQ(names, expected);

  const auto b = testutil::basis(6);
  const SimState s = make_initial(b, preset_config("small_data").initial);
  const DiagnosticsRecord r = make_record(s, PhysParams{});
  for (double v : r.values()) EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(r.min_theta, 0.0);
  EXPECT_NEAR(r.energy_total, r.energy_kinetic + r.energy_div + r.energy_curl + r.theta_mass, 1e-13);
  EXPECT_EQ(r.values()[0], r.t);
  EXPECT_EQ(r.values()[16], r.theta_l2_dist_to_mean);
}

TEST(FisherDissipation, EquilibriumHasZeroResidual) {
  const auto b = testutil::basis(4);
  std::vector<SimState> series;
  for (int i = 0; i < 4; ++i) {
    SimState s = rest_state(b, 1.5);
    s.t = 0.1 * i;
    series.push_back(s);
  }
  const FisherDissipationReport r = fisher_dissipation_residual(series, PhysParams{});
  ASSERT_EQ(r.intervals.size(), 2u);
  EXPECT_NEAR(r.max_residual, 0.0, 1e-14);
  EXPECT_NEAR(r.intervals[0].bound, 0.0, 1e-14);
}

TEST(FisherDissipation, PureDiffusionDissipates) {
  const auto b = testutil::basis(8);
  InitialSpec spec;
  spec.theta_modes = {{1, 1, 0.3}};
  spec.u_modes = {{VectorKind::Gradient, 1, 0, 0.1}};
  PhysParams p;
  p.nu = 0.0;
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.sample_every = 20;
  std::vector<SimState> series;
  simulate(make_initial(b, spec), p, cfg, 1.0, [&](const SimState& s, const DiagnosticsRecord&) { series.push_back(s); });
  const FisherDissipationReport r = fisher_dissipation_residual(series, p);
  EXPECT_LT(r.max_dF_dt, 0.0);
  EXPECT_LE(r.max_residual, 1e-6);
}

TEST(FisherDissipation, RequiresThreeUniformSamples) {
  const auto b = testutil::basis(4);
  std::vector<SimState> series(2, rest_state(b));
  series[1].t = 0.1;
  testutil::expect_error([&] { fisher_dissipation_residual(series, PhysParams{}); },
                         ErrorKind::InsufficientSamples);
  series.push_back(rest_state(b));
  series[2].t = 0.35;
  testutil::expect_error([&] { fisher_dissipation_residual(series, PhysParams{}); },
                         ErrorKind::InvalidArgument);
}

TEST(Inequalities, GradientLaplacianEqualityCase) {
  const auto b = testutil::basis(6, 2.0, 1.0);
  auto v = ScalarField::zeros(b);
  v.at(1, 0) = 1.0;  // the lowest nonzero eigenvalue on this rectangle
  EXPECT_NEAR(gradient_laplacian_ratio(v), 1.0, 1e-14);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) EXPECT_LE(gradient_laplacian_ratio(testutil::random_scalar(b, rng)), 1.0);
}

TEST(Inequalities, ConstantFieldHasVanishingSides) {
  const auto b = testutil::basis(4);
  const InequalityReport r = inequality_checks(ScalarField::constant(b, 2.0));
  EXPECT_NEAR(r.sqrt_hessian_lhs, 0.0, 1e-20);
  EXPECT_NEAR(r.log_hessian_rhs, 0.0, 1e-20);
  EXPECT_EQ(r.sqrt_log_ratio, 0.0);
}

TEST(Inequalities, SqrtLogHessianForCosinePerturbation) {
  const auto b = testutil::basis(16);
  InitialSpec spec;
  spec.theta_modes = {{1, 0, 0.2}};
  const ScalarField w = make_initial(b, spec).theta;
  const InequalityReport r = inequality_checks(w);
  // 1-D closed forms: s = sqrt(w), s'' = w''/(2s) - w'^2/(4 s^3); (log w)'' = w''/w - w'^2/w^2
  auto wf = [](double x) { return 1.0 + 0.2 * std::cos(x); };
  auto w1 = [](double x) { return -0.2 * std::sin(x); };
  auto w2 = [](double x) { return -0.2 * std::cos(x); };
  const double lhs = pi * oracle::integrate_1d(
                              [&](double x) {
                                const double s = std::sqrt(wf(x));
                                const double s2 = w2(x) / (2 * s) - w1(x) * w1(x) / (4 * s * s * s);
                                return s2 * s2;
                              },
                              0, pi);
  const double rhs = pi * oracle::integrate_1d(
                              [&](double x) {
                                const double l2 = w2(x) / wf(x) - w1(x) * w1(x) / (wf(x) * wf(x));
                                return wf(x) * l2 * l2;
                              },
                              0, pi);
  EXPECT_NEAR(r.sqrt_hessian_lhs, lhs, 1e-9 * lhs);
  EXPECT_NEAR(r.log_hessian_rhs, rhs, 1e-9 * rhs);
  EXPECT_LE(r.sqrt_log_ratio, 1.957);
  EXPECT_NEAR(InequalityReport::sqrt_log_constant(), 1.0 + std::sqrt(0.5) + 0.25, 1e-15);
}

TEST(TemperatureBounds, EquilibriumAndPureDiffusion) {
  const auto b = testutil::basis(16);
  std::vector<DiagnosticsRecord> recs = {make_record(rest_state(b, 2.0), PhysParams{})};
  TemperatureBounds tb = temperature_bounds(recs);
  EXPECT_NEAR(tb.inf_min_theta, 2.0, 1e-14);
  EXPECT_NEAR(tb.sup_max_theta, 2.0, 1e-14);

  const RunConfig c = preset_config("pure_heat");
  recs.clear();
  simulate(make_initial(SpectralBasis::create(c.domain), c.initial), c.params, c.stepper, c.t_end,
           [&](const SimState&, const DiagnosticsRecord& r) { recs.push_back(r); });
  tb = temperature_bounds(recs);
  // grid extrema of 1 + 0.5 cos x sit half a cell from the walls
  const double edge = 0.5 * std::cos(pi / (2.0 * c.domain.grid_n));
  EXPECT_NEAR(tb.inf_min_theta, 1.0 - edge, 1e-13);
  EXPECT_NEAR(tb.sup_max_theta, 1.0 + edge, 1e-13);
  EXPECT_EQ(tb.inf_min_theta, recs.front().min_theta);
  EXPECT_NEAR(recs.back().min_theta, 1.0, 1e-4);
  EXPECT_NEAR(recs.back().max_theta, 1.0, 1e-4);
}

}  // namespace
