// SPDX-License-Identifier: Apache-2.0
#include "thermo/verification.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <numbers>
#include <random>

#include "json.hpp"
#include "thermo/asymptotics.hpp"
#include "thermo/error.hpp"
#include "thermo/helmholtz.hpp"
#include "thermo/runner.hpp"

namespace thermo {

Suite parse_suite(std::string_view name) {
  if (name == "energy") return Suite::Energy;
  if (name == "entropy") return Suite::Entropy;
  if (name == "fisher") return Suite::Fisher;
  if (name == "asymptotics") return Suite::Asymptotics;
  if (name == "stability") return Suite::Stability;
  if (name == "all") return Suite::All;
  throw Error(ErrorKind::InvalidArgument, "unknown suite \"" + std::string(name) + "\"");
}

std::vector<int> suite_criteria(Suite suite) {
  switch (suite) {
    case Suite::Energy: return {1};
    case Suite::Entropy: return {2};
    case Suite::Fisher: return {3, 10};
    case Suite::Asymptotics: return {5, 6, 7};
    case Suite::Stability: return {8, 9};
    case Suite::All: return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  }
  return {};
}

bool Check::passed() const {
  if (!std::isfinite(value)) return false;
  switch (relation) {
    case Relation::Less: return value < limit;
    case Relation::LessEqual: return value <= limit;
    case Relation::Greater: return value > limit;
    case Relation::GreaterEqual: return value >= limit;
  }
  return false;
}

bool CriterionResult::passed() const {
  if (!error.empty() || checks.empty()) return false;
  for (const auto& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Series {
  std::vector<DiagnosticsRecord> records;
  SimState initial;
  SimState final_state;
  double seconds = 0.0;
};

Series run_series(const RunConfig& c, const DiagnosticsSink& extra = nullptr) {
  const auto start = Clock::now();
  Series s;
  s.initial = make_initial(SpectralBasis::create(c.domain), c.initial);
  s.final_state = simulate(s.initial, c.params, c.stepper, c.t_end,
                           [&](const SimState& st, const DiagnosticsRecord& rec) {
                             s.records.push_back(rec);
                             if (extra) extra(st, rec);
                           });
  s.seconds = seconds_since(start);
  return s;
}

struct FisherRun {
  Series series;
  double max_residual = -INFINITY;
  std::size_t windows = 0;
};

// Shared runs, computed on first use.
class Workspace {
 public:
  explicit Workspace(std::optional<RunConfig> base) : base_(std::move(base)) {}

  RunConfig small_data() const { return base_ ? *base_ : preset_config("small_data"); }

  const Series& short_run(int refinement) {
    auto& slot = short_[refinement];
    if (!slot) {
      RunConfig c = small_data();
      c.t_end = 10.0;
      c.stepper.dt *= refinement == 0 ? 2.0 : 1.0;
      slot = run_series(c);
    }
    return *slot;
  }

  const FisherRun& fisher_run() {
    if (!fisher_) {
      RunConfig c = small_data();
      c.t_end = 50.0;
      FisherRun fr;
      std::deque<SimState> window;
      fr.series = run_series(c, [&](const SimState& s, const DiagnosticsRecord&) {
        window.push_back(s);
        if (window.size() > 3) window.pop_front();
        if (window.size() < 3) return;
        const double h0 = window[1].t - window[0].t;
        const double h1 = window[2].t - window[1].t;
        if (std::abs(h1 - h0) > 1e-9 * std::max(1.0, window[2].t)) return;
        const std::vector<SimState> w(window.begin(), window.end());
        const FisherDissipationReport r = fisher_dissipation_residual(w, c.params);
        fr.max_residual = std::max(fr.max_residual, r.max_residual);
        ++fr.windows;
      });
      fisher_ = std::move(fr);
    }
    return *fisher_;
  }

  const Series& theta_limit() {
    if (!theta_limit_) {
      RunConfig c = preset_config("theta_limit");
      if (base_) {
        const RunConfig b = *base_;
        c.domain = b.domain;
        c.params = b.params;
        c.initial = b.initial;
        c.stepper.dt = b.stepper.dt;
        c.stepper.scheme = b.stepper.scheme;
      }
      theta_limit_config_ = c;
      theta_limit_ = run_series(c);
    }
    return *theta_limit_;
  }
  const RunConfig& theta_limit_config() {
    theta_limit();
    return theta_limit_config_;
  }

 private:
  std::optional<RunConfig> base_;
  std::optional<Series> short_[2];
  std::optional<FisherRun> fisher_;
  std::optional<Series> theta_limit_;
  RunConfig theta_limit_config_;
};

CriterionResult energy_conservation(Workspace& ws) {
  CriterionResult r{1, "energy_conservation", {}, 0.0, ""};
  const Series& fine = ws.short_run(1);
  const Series& coarse = ws.short_run(0);
  const double d_fine = energy_drift(fine.records);
  const double d_coarse = energy_drift(coarse.records);
  r.checks.push_back({"relative_drift", d_fine, Relation::LessEqual, 1e-6});
  r.checks.push_back({"drift_reduction_on_halving", d_coarse / d_fine, Relation::GreaterEqual, 3.5});
  r.checks.push_back({"runtime_s", fine.seconds, Relation::Less, 30.0});
  return r;
}

CriterionResult entropy_identity(Workspace& ws) {
  CriterionResult r{2, "entropy_identity", {}, 0.0, ""};
  const double e_fine = entropy_identity_error(ws.short_run(1).records);
  const double e_coarse = entropy_identity_error(ws.short_run(0).records);
  const double order = std::log2(e_coarse / e_fine);
  r.checks.push_back({"relative_error", e_fine, Relation::LessEqual, 1e-2});
  r.checks.push_back({"order_min", order, Relation::GreaterEqual, 1.8});
  r.checks.push_back({"order_max", order, Relation::LessEqual, 2.2});
  return r;
}

CriterionResult fisher_monotonicity(Workspace& ws) {
  CriterionResult r{3, "fisher_monotonicity", {}, 0.0, ""};
  const FisherRun& fr = ws.fisher_run();
  const double f0 = fr.series.records.front().fisher_F;
  if (fr.windows == 0) throw Error(ErrorKind::InsufficientSamples, "no uniformly spaced sample triple");
  r.checks.push_back({"max_F_over_F0_minus_1", fisher_growth(fr.series.records), Relation::LessEqual, 1e-6});
  r.checks.push_back({"max_dissipation_residual_over_F0", fr.max_residual / f0, Relation::LessEqual, 1e-3});
  r.checks.push_back({"runtime_s", fr.series.seconds, Relation::Less, 120.0});
  return r;
}

VectorField random_vector_field(const BasisPtr& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorField v = VectorField::zeros(basis);
  const int m = static_cast<int>(basis->stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const double scale = 1.0 / (1.0 + basis->xi(k, l));
      if (k + l >= 1) v.at(VectorKind::Gradient, k, l) = scale * normal(rng);
      if (k >= 1 && l >= 1) v.at(VectorKind::Rotational, k, l) = scale * normal(rng);
    }
  }
  return v;
}

double grid_dot(const SpectralBasis& b, const VectorGrid& a, const VectorGrid& c) {
  ScalarGrid prod(a.x.n);
  for (std::size_t i = 0; i < prod.values.size(); ++i) {
    prod.values[i] = a.x.values[i] * c.x.values[i] + a.y.values[i] * c.y.values[i];
  }
  return b.integrate(prod);
}

CriterionResult helmholtz_structure() {
  CriterionResult r{4, "helmholtz_structure", {}, 0.0, ""};
  const auto start = Clock::now();
  const BasisPtr basis = SpectralBasis::create(DomainSpec{});
  std::mt19937_64 rng(20240601);
  double recon = 0.0, ortho = 0.0, pyth = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const VectorGrid v = random_vector_field(basis, rng).samples();
    const HelmholtzPair hp = project(forward(basis, v));
    const VectorGrid g = hp.gamma.samples();
    const VectorGrid c = hp.chi.samples();
    double vmax = 0.0, err = 0.0;
    for (std::size_t i = 0; i < v.x.values.size(); ++i) {
      vmax = std::max({vmax, std::abs(v.x.values[i]), std::abs(v.y.values[i])});
      err = std::max({err, std::abs(g.x.values[i] + c.x.values[i] - v.x.values[i]),
                      std::abs(g.y.values[i] + c.y.values[i] - v.y.values[i])});
    }
    recon = std::max(recon, err / vmax);
    const double gg = grid_dot(*basis, g, g);
    const double cc = grid_dot(*basis, c, c);
    const double vv = grid_dot(*basis, v, v);
    ortho = std::max(ortho, std::abs(grid_dot(*basis, g, c)) / std::sqrt(gg * cc));
    pyth = std::max(pyth, std::abs(vv - gg - cc) / vv);
  }
  r.checks.push_back({"reconstruction", recon, Relation::LessEqual, 1e-12});
  r.checks.push_back({"orthogonality", ortho, Relation::LessEqual, 1e-12});
  r.checks.push_back({"pythagoras", pyth, Relation::LessEqual, 1e-12});
  r.checks.push_back({"runtime_s", seconds_since(start), Relation::Less, 5.0});
  return r;
}

CriterionResult gamma_exactness() {
  CriterionResult r{5, "gamma_sector_exactness", {}, 0.0, ""};
  const auto start = Clock::now();
  const RunConfig c = preset_config("gamma_oscillation");
  const BasisPtr basis = SpectralBasis::create(c.domain);
  const SimState s0 = make_initial(basis, c.initial);
  std::vector<GammaSample> gamma;
  std::vector<DiagnosticsRecord> records;
  simulate(s0, c.params, c.stepper, c.t_end, [&](const SimState& s, const DiagnosticsRecord& rec) {
    gamma.push_back(gamma_sample(s));
    records.push_back(rec);
  });
  double slowest = INFINITY;
  for (const auto& m : c.initial.u_modes) {
    if (m.kind == VectorKind::Rotational) slowest = std::min(slowest, basis->xi(m.k, m.l));
  }
  for (const auto& m : c.initial.v_modes) {
    if (m.kind == VectorKind::Rotational) slowest = std::min(slowest, basis->xi(m.k, m.l));
  }
  const double periods = c.t_end * std::sqrt(c.params.mu * slowest) / (2.0 * std::numbers::pi);
  const double data_norm = h_norm(s0.u) + l2_norm(s0.v) + l2_norm(s0.theta);
  const OscillationReport osc = oscillation_check(gamma, basis, c.params.mu, data_norm);
  const AsymptoticsReport rep = convergence_report(records, theta_infinity(s0, c.params), c.domain.area());
  r.checks.push_back({"periods_of_slowest_mode", periods, Relation::GreaterEqual, 10.0});
  r.checks.push_back({"max_coefficient_deviation", osc.max_deviation, Relation::LessEqual, 1e-10});
  r.checks.push_back({"gamma_energy_spread", rep.gamma_energy_spread, Relation::LessEqual, 1e-10});
  r.checks.push_back({"runtime_s", seconds_since(start), Relation::Less, 30.0});
  return r;
}

CriterionResult theta_limit(Workspace& ws) {
  CriterionResult r{6, "theta_infinity_limit", {}, 0.0, ""};
  const Series& s = ws.theta_limit();
  const RunConfig& c = ws.theta_limit_config();
  const ThetaInfinity ti = theta_infinity(s.initial, c.params);
  const AsymptoticsReport rep = convergence_report(s.records, ti, c.domain.area());
  const double dist_ratio = rep.theta_l2_dist_series.back() / rep.theta_l2_dist_series.front();
  const double gap = std::abs(rep.theta_mean_final - ti.conserved) - rep.residual_chi_energy_density;
  r.checks.push_back({"t_end", c.t_end, Relation::GreaterEqual, 200.0});
  r.checks.push_back({"chi_decay_ratio", rep.decay_ratio, Relation::Less, 0.5});
  r.checks.push_back({"theta_distance_ratio", dist_ratio, Relation::Less, 0.5});
  r.checks.push_back({"theta_mean_gap_minus_residual", gap, Relation::LessEqual, 1e-8});
  r.checks.push_back({"runtime_s", s.seconds, Relation::Less, 300.0});
  return r;
}

CriterionResult temperature_bound_check(Workspace& ws) {
  CriterionResult r{7, "temperature_bounds", {}, 0.0, ""};
  auto add = [&](const std::string& tag, const Series& s, const PhysParams& p) {
    const TemperatureBounds tb = temperature_bounds(s.records);
    const double limit = 2.0 * s.records.front().max_theta + theta_infinity(s.initial, p).conserved;
    r.checks.push_back({tag + "_min_theta", tb.inf_min_theta, Relation::Greater, 0.0});
    r.checks.push_back({tag + "_max_theta", tb.sup_max_theta, Relation::LessEqual, limit});
  };
  add("small_data", ws.fisher_run().series, ws.small_data().params);
  add("theta_limit", ws.theta_limit(), ws.theta_limit_config().params);
  return r;
}

CriterionResult continuous_dependence(Workspace& ws) {
  CriterionResult r{8, "continuous_dependence", {}, 0.0, ""};
  const auto start = Clock::now();
  RunConfig c = preset_config("stability_pair");
  const RunConfig base = ws.small_data();
  c.domain = base.domain;
  c.params = base.params;
  c.initial = base.initial;
  c.stepper = base.stepper;
  const auto rows = stability_experiment(SpectralBasis::create(c.domain), c.initial,
                                         c.stability->direction, c.stability->deltas, c.params,
                                         c.stepper, c.t_end);
  const double r_mid = rows[rows.size() - 2].ratio;
  const double r_small = rows.back().ratio;
  r.checks.push_back({"relative_change_two_smallest_deltas", std::abs(r_mid - r_small) / r_small,
                      Relation::LessEqual, 0.05});
  r.checks.push_back({"runtime_s", seconds_since(start), Relation::Less, 120.0});
  return r;
}

CriterionResult scheme_convergence(Workspace& ws) {
  CriterionResult r{9, "scheme_convergence", {}, 0.0, ""};
  const auto start = Clock::now();
  const RunConfig c = ws.small_data();
  const double horizon = 1.0;
  const SimState s0 = make_initial(SpectralBasis::create(c.domain), c.initial);
  const std::vector<double> dts = {4e-3, 2e-3, 1e-3};
  std::vector<double> errors;
  for (double dt : dts) {
    StepperConfig split = c.stepper;
    split.dt = dt;
    split.scheme = Scheme::StrangExact;
    StepperConfig ref = split;
    ref.dt = dt / 64.0;
    ref.scheme = Scheme::Rk4Reference;
    const SimState a = simulate(s0, c.params, split, horizon, nullptr);
    const SimState b = simulate(s0, c.params, ref, horizon, nullptr);
    errors.push_back(state_distance(a, b));
  }
  // least-squares slope of log(error) against log(dt)
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    mx += std::log(dts[i]);
    my += std::log(errors[i]);
  }
  mx /= dts.size();
  my /= dts.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    sxy += (std::log(dts[i]) - mx) * (std::log(errors[i]) - my);
    sxx += (std::log(dts[i]) - mx) * (std::log(dts[i]) - mx);
  }
  const double slope = sxy / sxx;
  r.checks.push_back({"slope_min", slope, Relation::GreaterEqual, 1.8});
  r.checks.push_back({"slope_max", slope, Relation::LessEqual, 2.2});
  r.checks.push_back({"runtime_s", seconds_since(start), Relation::Less, 120.0});
  return r;
}

CriterionResult inequality_suite() {
  CriterionResult r{10, "inequality_suite", {}, 0.0, ""};
  const auto start = Clock::now();
  const BasisPtr basis = SpectralBasis::create(DomainSpec{});
  std::mt19937_64 rng(7321);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> floor_dist(0.05, 1.0);
  const int m = static_cast<int>(basis->stride());
  double grad_lap = 0.0, sqrt_log = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    ScalarField w = ScalarField::zeros(basis);
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) {
        if (k + l >= 1) w.at(k, l) = normal(rng) / (1.0 + basis->xi(k, l));
      }
    }
    const GridExtrema ext = grid_extrema(w);
    w.at(0, 0) = (floor_dist(rng) - ext.min) * std::sqrt(basis->domain().area());
    const InequalityReport rep = inequality_checks(w);
    grad_lap = std::max(grad_lap, rep.gradient_laplacian_ratio);
    sqrt_log = std::max(sqrt_log, rep.sqrt_log_ratio);
  }
  r.checks.push_back({"max_gradient_laplacian_ratio", grad_lap, Relation::LessEqual, 1.0});
  r.checks.push_back({"max_sqrt_log_hessian_ratio", sqrt_log, Relation::LessEqual,
                      InequalityReport::sqrt_log_constant()});
  r.checks.push_back({"runtime_s", seconds_since(start), Relation::Less, 10.0});
  return r;
}

std::string_view relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::Greater: return ">";
    case Relation::GreaterEqual: return ">=";
  }
  return "?";
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::vector<CriterionResult> verify(Suite suite, const std::optional<RunConfig>& base) {
  Workspace ws(base);
  const std::function<CriterionResult()> criteria[] = {
      [&] { return energy_conservation(ws); },   [&] { return entropy_identity(ws); },
      [&] { return fisher_monotonicity(ws); },   [] { return helmholtz_structure(); },
      [] { return gamma_exactness(); },          [&] { return theta_limit(ws); },
      [&] { return temperature_bound_check(ws); }, [&] { return continuous_dependence(ws); },
      [&] { return scheme_convergence(ws); },    [] { return inequality_suite(); },
  };
  static const char* const names[] = {"energy_conservation", "entropy_identity",
                                      "fisher_monotonicity", "helmholtz_structure",
                                      "gamma_sector_exactness", "theta_infinity_limit",
                                      "temperature_bounds", "continuous_dependence",
                                      "scheme_convergence", "inequality_suite"};
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(suite)) {
    const auto start = Clock::now();
    CriterionResult r;
    try {
      r = criteria[id - 1]();
    } catch (const std::exception& e) {
      r = CriterionResult{id, names[id - 1], {}, 0.0, e.what()};
    }
    r.seconds = seconds_since(start);
    out.push_back(std::move(r));
  }
  return out;
}

std::string criterion_line(const CriterionResult& r) {
  std::string line = r.passed() ? "PASS" : "FAIL";
  line += " criterion " + std::to_string(r.id) + " " + r.name;
  for (const auto& c : r.checks) {
    line += " | " + c.label + "=" + short_number(c.value) + " " + std::string(relation_symbol(c.relation)) +
            " " + short_number(c.limit);
    if (!c.passed()) line += " (violated)";
  }
  if (!r.error.empty()) line += " | error: " + r.error;
  return line;
}

std::string verify_json(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"label", c.label},
                        {"value", c.value},
                        {"relation", relation_symbol(c.relation)},
                        {"limit", c.limit},
                        {"passed", c.passed()}});
    }
    nlohmann::json row = {{"id", r.id}, {"name", r.name}, {"passed", r.passed()},
                          {"seconds", r.seconds}, {"checks", checks}};
    if (!r.error.empty()) row["error"] = r.error;
    arr.push_back(row);
    all = all && r.passed();
  }
  return nlohmann::json{{"criteria", arr}, {"all_passed", all}}.dump(2) + '\n';
}

}  // namespace thermo
