// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstring>

#include "oracles.hpp"
#include "test_util.hpp"
#include "thermo/asymptotics.hpp"
#include "thermo/config.hpp"
#include "thermo/dynamics.hpp"
#include "thermo/helmholtz.hpp"

namespace {

using namespace thermo;
using oracle::pi;

SimState rest_state(const BasisPtr& b, double theta = 1.0) {
  return {0.0, VectorField::zeros(b), VectorField::zeros(b), ScalarField::constant(b, theta)};
}

InitialSpec small_spec() { return preset_config("small_data").initial; }

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool same_state(const SimState& a, const SimState& b) {
  return a.t == b.t && same_bits(a.u.grad, b.u.grad) && same_bits(a.u.rot, b.u.rot) &&
         same_bits(a.v.grad, b.v.grad) && same_bits(a.v.rot, b.v.rot) && same_bits(a.theta.coef, b.theta.coef);
}

TEST(LinearSubstep, GradientModeHalfPeriod) {
  const auto b = testutil::basis(4);
  SimState s = rest_state(b);
  s.u.at(VectorKind::Gradient, 1, 0) = 1.0;
  const PhysParams p{1.0, 1.0, 0.5};
  const SimState out = linear_substep(s, p, pi / std::sqrt(3.0));
  EXPECT_NEAR(out.u.at(VectorKind::Gradient, 1, 0), -1.0, 1e-14);
  EXPECT_NEAR(out.v.at(VectorKind::Gradient, 1, 0), 0.0, 1e-14);
}

TEST(LinearSubstep, ThetaModeDecay) {
  const auto b = testutil::basis(4);
  SimState s = rest_state(b);
  s.theta.at(1, 1) = 1.0;
  const SimState out = linear_substep(s, PhysParams{}, 0.5);
  EXPECT_NEAR(out.theta.at(1, 1), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(out.theta.at(1, 1), 0.367879441171442, 1e-14);
  EXPECT_EQ(out.theta.at(0, 0), s.theta.at(0, 0));
}

TEST(LinearSubstep, ZeroStepIsIdentity) {
  const auto b = testutil::basis(5);
  const SimState s = make_initial(b, small_spec());
  EXPECT_TRUE(same_state(linear_substep(s, PhysParams{}, 0.0), s));
}

TEST(CouplingRhs, VanishesWithoutCoupling) {
  const auto b = testutil::basis(5);
  const SimState s = make_initial(b, small_spec());
  PhysParams p;
  p.nu = 0.0;
  const CouplingRhs r = coupling_rhs(s, p);
  EXPECT_EQ(l2_norm(r.dv), 0.0);
  EXPECT_EQ(l2_norm(r.dtheta), 0.0);
}

TEST(CouplingRhs, ConstantTemperatureGivesScaledDivergence) {
  const auto b = testutil::basis(6);
  std::mt19937_64 rng(41);
  SimState s = rest_state(b, 1.7);
  s.v = testutil::random_vector(b, rng);
  const PhysParams p{1.0, 1.0, 0.3};
  const CouplingRhs r = coupling_rhs(s, p);
  const ScalarField expected = (-0.3 * 1.7) * div(s.v);
  EXPECT_LE(testutil::max_abs_diff(r.dtheta.coef, expected.coef), 1e-12 * l2_norm(expected));
  EXPECT_EQ(l2_norm(r.dv), 0.0);
}

TEST(CouplingRhs, CosineTemperatureDrivesOneGradientMode) {
  const auto b = testutil::basis(6);
  SimState s = rest_state(b);
  InitialSpec spec;
  spec.theta_modes = {{1, 0, 1.0}};
  s.theta = make_initial(b, spec).theta;
  const double nu = 0.5;
  const CouplingRhs r = coupling_rhs(s, PhysParams{1.0, 1.0, nu});
  // <-nu grad(1 + cos x), G_10> with G_10 = (-sin x, 0) sqrt(2) / pi
  const double expected = oracle::integrate_2d(
      [&](double x, double) { return -nu * (-std::sin(x)) * (-std::sin(x) * std::sqrt(2.0) / pi); }, pi, pi);
  EXPECT_NEAR(r.dv.at(VectorKind::Gradient, 1, 0), expected, 1e-12);
  for (std::size_t i = 0; i < r.dv.grad.size(); ++i) {
    if (i != b->index(1, 0)) {
      EXPECT_NEAR(r.dv.grad[i], 0.0, 1e-14);
    }
  }
  for (double c : r.dv.rot) EXPECT_EQ(c, 0.0);
}

TEST(Step, DecoupledModesFollowClosedForms) {
  const auto b = testutil::basis(6);
  InitialSpec spec;
  spec.u_modes = {{VectorKind::Gradient, 2, 1, 0.3}, {VectorKind::Rotational, 1, 3, -0.2}};
  spec.v_modes = {{VectorKind::Gradient, 2, 1, 0.1}, {VectorKind::Rotational, 1, 3, 0.4}};
  spec.theta_modes = {{1, 1, 0.2}};
  const SimState s0 = make_initial(b, spec);
  const PhysParams p{1.3, 0.4, 0.0};
  StepperConfig cfg;
  cfg.dt = 0.037;
  SimState s = s0;
  for (int n = 0; n < 200; ++n) s = step(s, p, cfg);
  const double t = s.t;
  auto osc = [&](double d0, double d1, double omega) {
    return std::pair{d0 * std::cos(omega * t) + d1 * std::sin(omega * t) / omega,
                     -d0 * omega * std::sin(omega * t) + d1 * std::cos(omega * t)};
  };
  const auto g = osc(0.3, 0.1, std::sqrt((2 * 1.3 + 0.4) * b->xi(2, 1)));
  const auto r = osc(-0.2, 0.4, std::sqrt(1.3 * b->xi(1, 3)));
  EXPECT_NEAR(s.u.at(VectorKind::Gradient, 2, 1), g.first, 1e-12);
  EXPECT_NEAR(s.v.at(VectorKind::Gradient, 2, 1), g.second, 1e-12);
  EXPECT_NEAR(s.u.at(VectorKind::Rotational, 1, 3), r.first, 1e-12);
  EXPECT_NEAR(s.v.at(VectorKind::Rotational, 1, 3), r.second, 1e-12);
  EXPECT_NEAR(s.theta.at(1, 1), s0.theta.at(1, 1) * std::exp(-b->xi(1, 1) * t), 1e-12);
}

TEST(Step, OneStepLocalErrorIsThirdOrder) {
  const auto b = testutil::basis(8);
  const SimState s0 = make_initial(b, small_spec());
  const PhysParams p;
  std::vector<double> errs;
  for (double dt : {2e-3, 1e-3}) {
    StepperConfig a;
    a.dt = dt;
    StepperConfig ref = a;
    ref.dt = dt / 64;
    ref.scheme = Scheme::Rk4Reference;
    const SimState x = step(s0, p, a);
    const SimState y = simulate(s0, p, ref, dt, nullptr);
    errs.push_back(state_distance(x, y));
  }
  EXPECT_GT(errs[0] / errs[1], 6.0);
  EXPECT_LT(errs[0] / errs[1], 10.0);
}

TEST(Step, GlobalErrorHalvesQuadratically) {
  const auto b = testutil::basis(8);
  const SimState s0 = make_initial(b, small_spec());
  const PhysParams p;
  std::vector<double> errs;
  for (double dt : {4e-3, 2e-3}) {
    StepperConfig a;
    a.dt = dt;
    StepperConfig ref = a;
    ref.dt = dt / 64;
    ref.scheme = Scheme::Rk4Reference;
    errs.push_back(state_distance(simulate(s0, p, a, 0.2, nullptr), simulate(s0, p, ref, 0.2, nullptr)));
  }
  EXPECT_NEAR(errs[0] / errs[1], 4.0, 0.5);
}

TEST(Step, MassLedgerMatchesTrapezoidalCoupling) {
  const auto b = testutil::basis(8);
  const SimState s0 = make_initial(b, small_spec());
  const PhysParams p;
  auto coupling_integral = [&](const SimState& s) {
    ScalarGrid prod(b->grid_n());
    const ScalarGrid th = s.theta.samples();
    const ScalarGrid dv = div(s.v).samples();
    for (std::size_t i = 0; i < prod.values.size(); ++i) prod.values[i] = th.values[i] * dv.values[i];
    return -p.nu * b->integrate(prod);
  };
  std::vector<double> gaps;
  for (double dt : {4e-3, 2e-3}) {
    StepperConfig cfg;
    cfg.dt = dt;
    const SimState s1 = step(s0, p, cfg);
    const double mass_change = (s1.theta.at(0, 0) - s0.theta.at(0, 0)) * pi;
    const double predicted = 0.5 * dt * (coupling_integral(s0) + coupling_integral(s1));
    gaps.push_back(std::abs(mass_change - predicted));
  }
  EXPECT_LT(gaps[1], 1e-9);
  EXPECT_GT(gaps[0] / gaps[1], 6.0);
}

TEST(Step, RotationalSectorIgnoresCoupling) {
  const auto b = testutil::basis(6);
  const SimState s0 = make_initial(b, small_spec());
  PhysParams coupled, decoupled;
  decoupled.nu = 0.0;
  StepperConfig cfg;
  const SimState a = simulate(s0, coupled, cfg, 1.0, nullptr);
  const SimState c = simulate(s0, decoupled, cfg, 1.0, nullptr);
  EXPECT_TRUE(same_bits(a.u.rot, c.u.rot));
  EXPECT_TRUE(same_bits(a.v.rot, c.v.rot));
}

TEST(Step, NonPositiveTemperatureIsAnError) {
  const auto b = testutil::basis(4);
  SimState s = rest_state(b);
  s.theta.at(1, 0) = 3.0;
  testutil::expect_error([&] { step(s, PhysParams{}, StepperConfig{}); }, ErrorKind::NonPositiveTemperature);
}

TEST(Step, BlowupIsReportedWithTime) {
  const auto b = testutil::basis(4);
  SimState s = rest_state(b);
  s.u.at(VectorKind::Gradient, 4, 4) = 1.0;
  PhysParams p;
  p.nu = 0.0;
  StepperConfig cfg;
  cfg.dt = 0.5;
  cfg.scheme = Scheme::Rk4Reference;
  try {
    simulate(s, p, cfg, 1e4, nullptr);
    FAIL() << "expected NumericalBlowup";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NumericalBlowup);
    ASSERT_TRUE(e.time().has_value());
    EXPECT_GT(*e.time(), 0.0);
  }
}

TEST(StepperConfig, Validation) {
  StepperConfig c;
  c.dt = 0.0;
  testutil::expect_error([&] { c.validate(); }, ErrorKind::InvalidArgument);
  c = StepperConfig{};
  c.sample_every = 0;
  testutil::expect_error([&] { c.validate(); }, ErrorKind::InvalidArgument);
}

TEST(Simulate, ZeroSpanEmitsOneRecord) {
  const auto b = testutil::basis(4);
  const SimState s0 = make_initial(b, small_spec());
  int records = 0;
  const SimState out = simulate(s0, PhysParams{}, StepperConfig{}, 0.0,
                                [&](const SimState&, const DiagnosticsRecord&) { ++records; });
  EXPECT_EQ(records, 1);
  EXPECT_TRUE(same_state(out, s0));
}

TEST(Simulate, EquilibriumIsStationary) {
  const auto b = testutil::basis(6);
  const SimState s0 = rest_state(b, 1.4);
  StepperConfig cfg;
  cfg.dt = 0.01;
  const SimState out = simulate(s0, PhysParams{}, cfg, 5.0, nullptr);
  EXPECT_TRUE(same_bits(out.theta.coef, s0.theta.coef));
  EXPECT_EQ(l2_norm(out.u), 0.0);
  EXPECT_EQ(l2_norm(out.v), 0.0);
}

TEST(Simulate, DecoupledPresetConservesEnergyToRoundoff) {
  const RunConfig c = preset_config("decoupled_wave");
  const auto b = SpectralBasis::create(c.domain);
  std::vector<double> energies;
  simulate(make_initial(b, c.initial), c.params, c.stepper, 10.0,
           [&](const SimState&, const DiagnosticsRecord& r) { energies.push_back(r.energy_total); });
  for (double e : energies) EXPECT_NEAR(e, energies.front(), 1e-12 * energies.front());
}

TEST(Simulate, SamplingScheduleAndFinalTime) {
  const auto b = testutil::basis(4);
  StepperConfig cfg;
  cfg.dt = 0.1;
  cfg.sample_every = 3;
  std::vector<double> times;
  const SimState out = simulate(rest_state(b), PhysParams{}, cfg, 1.05,
                                [&](const SimState& s, const DiagnosticsRecord&) { times.push_back(s.t); });
  EXPECT_EQ(out.t, 1.05);
  ASSERT_EQ(times.size(), 5u);
  EXPECT_EQ(times[0], 0.0);
  EXPECT_NEAR(times[1], 0.3, 1e-15);
  EXPECT_NEAR(times[3], 0.9, 1e-15);
  EXPECT_EQ(times[4], 1.05);
}

TEST(Simulate, RepeatedRunsAreBitIdentical) {
  const auto b = testutil::basis(8);
  const SimState s0 = make_initial(b, small_spec());
  const SimState a = simulate(s0, PhysParams{}, StepperConfig{}, 0.5, nullptr);
  const SimState c = simulate(s0, PhysParams{}, StepperConfig{}, 0.5, nullptr);
  EXPECT_TRUE(same_state(a, c));
}

TEST(MakeInitial, ConstantAndAmplitudeConventions) {
  const auto b = testutil::basis(6);
  InitialSpec spec;
  spec.theta_base = 2.0;
  const SimState s = make_initial(b, spec);
  EXPECT_NEAR(grid_extrema(s.theta).min, 2.0, 1e-14);

  spec.u_modes = {{VectorKind::Gradient, 2, 1, 0.25}};
  EXPECT_NEAR(h_norm(make_initial(b, spec).u), 0.25 * std::sqrt(5.0), 1e-14);
}

TEST(MakeInitial, NegativeTemperatureAndBadModes) {
  const auto b = testutil::basis(6);
  InitialSpec spec;
  spec.theta_modes = {{1, 0, 1.5}};
  testutil::expect_error([&] { make_initial(b, spec); }, ErrorKind::NonPositiveTemperature);
  spec = InitialSpec{};
  spec.u_modes = {{VectorKind::Rotational, 0, 2, 1.0}};
  testutil::expect_error([&] { make_initial(b, spec); }, ErrorKind::InvalidMode);
  spec.u_modes = {{VectorKind::Gradient, 7, 0, 1.0}};
  testutil::expect_error([&] { make_initial(b, spec); }, ErrorKind::InvalidMode);
}

TEST(PhysParams, Validation) {
  PhysParams p;
  p.mu = -1.0;
  testutil::expect_error([&] { p.validate(); }, ErrorKind::InvalidArgument);
  p = PhysParams{};
  p.lambda = -1.0;  // 2mu + 2 lambda = 0
  testutil::expect_error([&] { p.validate(); }, ErrorKind::InvalidArgument);
  p.lambda = -0.9;
  EXPECT_NO_THROW(p.validate());
}

}  // namespace
