// SPDX-License-Identifier: Apache-2.0
#include "thermo/runner.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "thermo/output.hpp"
#include "thermo/simd.hpp"

namespace thermo {

using nlohmann::json;

double energy_drift(std::span<const DiagnosticsRecord> series) {
  if (series.empty()) return 0.0;
  const double e0 = series.front().energy_total;
  double drift = 0.0;
  for (const auto& r : series) drift = std::max(drift, std::abs(r.energy_total - e0));
  return e0 != 0.0 ? drift / std::abs(e0) : drift;
}

double entropy_identity_error(std::span<const DiagnosticsRecord> series) {
  if (series.size() < 2) return 0.0;
  double integral = 0.0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    integral += 0.5 * (series[i].t - series[i - 1].t) *
                (series[i].entropy_production + series[i - 1].entropy_production);
  }
  const double ds = series.back().entropy - series.front().entropy;
  const double gap = std::abs(ds - integral);
  return std::abs(ds) > 1e-14 ? gap / std::abs(ds) : gap;
}

double fisher_growth(std::span<const DiagnosticsRecord> series) {
  if (series.empty()) return 0.0;
  const double f0 = series.front().fisher_F;
  double fmax = f0;
  for (const auto& r : series) fmax = std::max(fmax, r.fisher_F);
  if (f0 == 0.0) return fmax;
  return fmax / f0 - 1.0;
}

bool RunResult::all_passed() const {
  return std::none_of(invariants.begin(), invariants.end(),
                      [](const InvariantCheck& c) { return c.status == CheckStatus::Fail; });
}

namespace {

InvariantCheck bounded(std::string name, double value, double limit) {
  return {std::move(name), value <= limit ? CheckStatus::Pass : CheckStatus::Fail, value, limit, ""};
}

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "skipped";
}

std::string_view verdict_name(OscillationVerdict v) {
  return v == OscillationVerdict::Oscillatory ? "Oscillatory" : "Zero";
}

}  // namespace

RunResult execute(const RunConfig& config, const RecordSink& sink) {
  config.validate();
  const BasisPtr basis = SpectralBasis::create(config.domain);
  const SimState initial = make_initial(basis, config.initial);
  const PhysParams& p = config.params;

  RunResult result;
  result.simd_backend = std::string(simd::active().name);
  result.theta_inf = theta_infinity(initial, p);

  std::vector<GammaSample> gamma;
  result.final_state = simulate(initial, p, config.stepper, config.t_end,
                                [&](const SimState& s, const DiagnosticsRecord& rec) {
                                  result.records.push_back(rec);
                                  gamma.push_back(gamma_sample(s));
                                  if (sink) sink(rec);
                                });

  const double area = config.domain.area();
  result.report = convergence_report(result.records, result.theta_inf, area);

  const SimState& f = result.final_state;
  const GridExtrema ext = grid_extrema(f.theta);
  result.final_norms = {f.t,
                        h_norm(f.u),
                        l2_norm(f.u),
                        l2_norm(f.v),
                        l2_norm(f.theta),
                        result.report.theta_mean_final,
                        ext.min,
                        ext.max,
                        result.records.back().energy_total,
                        result.records.back().fisher_F};

  auto& inv = result.invariants;
  const TemperatureBounds tb = temperature_bounds(result.records);
  inv.push_back({"theta_positive", tb.inf_min_theta > 0.0 ? CheckStatus::Pass : CheckStatus::Fail,
                 tb.inf_min_theta, 0.0, "min over samples of min_theta, must be > 0"});
  inv.push_back(bounded("energy_conservation", energy_drift(result.records), 1e-6));
  inv.push_back(bounded("entropy_identity", entropy_identity_error(result.records), 1e-2));
  {
    double drop = -INFINITY, production = 1.0;
    for (std::size_t i = 0; i < result.records.size(); ++i) {
      production = std::max(production, result.records[i].entropy_production);
      if (i > 0) drop = std::max(drop, result.records[i - 1].entropy - result.records[i].entropy);
    }
    // slack per sample interval: 1e-2 dt^2 per step, scaled by the largest production rate
    const double dt = config.stepper.dt;
    const double slack = 1e-2 * dt * dt * config.stepper.sample_every * production;
    if (result.records.size() < 2) drop = 0.0;
    inv.push_back(bounded("entropy_monotone", drop, slack));
  }
  inv.push_back(bounded("fisher_monotone", fisher_growth(result.records), 1e-6));
  inv.push_back(bounded("gamma_energy_spread", result.report.gamma_energy_spread, 1e-10));

  const double data_norm = h_norm(initial.u) + l2_norm(initial.v) + l2_norm(initial.theta);
  try {
    result.oscillation = oscillation_check(gamma, basis, p.mu, data_norm);
    inv.push_back(bounded("gamma_closed_form", result.oscillation->max_deviation, 1e-10));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientSamples) throw;
    inv.push_back({"gamma_closed_form", CheckStatus::Skipped, 0.0, 1e-10, e.what()});
  }

  const double theta_gap = std::abs(result.report.theta_mean_final - result.theta_inf.conserved);
  inv.push_back(bounded("theta_infinity_consistency",
                        theta_gap - result.report.residual_chi_energy_density, 1e-8));

  if (config.stability) {
    result.stability = stability_experiment(basis, config.initial, config.stability->direction,
                                            config.stability->deltas, p, config.stepper,
                                            config.t_end);
  }
  return result;
}

std::string summary_json(const RunConfig& config, const RunResult& r) {
  const AsymptoticsReport& a = r.report;
  json asym = {{"theta_infinity_predicted", a.theta_infinity_predicted},
               {"theta_mean_final", a.theta_mean_final},
               {"decay_ratio", a.decay_ratio},
               {"oscillation_verdict", verdict_name(a.oscillation_verdict)},
               {"gamma_energy_spread", a.gamma_energy_spread},
               {"residual_chi_energy_density", a.residual_chi_energy_density},
               {"times", a.times},
               {"chi_h_norm_series", a.chi_h_norm_series},
               {"chi_t_l2_series", a.chi_t_l2_series},
               {"theta_l2_dist_series", a.theta_l2_dist_series},
               {"gamma_energy_series", a.gamma_energy_series}};

  const FinalNorms& n = r.final_norms;
  json final_state = {{"t", n.t},           {"u_h_norm", n.u_h},          {"u_l2", n.u_l2},
                      {"v_l2", n.v_l2},     {"theta_l2", n.theta_l2},     {"theta_mean", n.theta_mean},
                      {"min_theta", n.min_theta}, {"max_theta", n.max_theta},
                      {"energy_total", n.energy_total}, {"fisher_F", n.fisher_F}};

  json invariants = json::array();
  for (const auto& c : r.invariants) {
    json row = {{"name", c.name}, {"status", status_name(c.status)}, {"value", c.value}, {"limit", c.limit}};
    if (!c.note.empty()) row["note"] = c.note;
    invariants.push_back(row);
  }

  json root = {{"preset", config.preset ? json(*config.preset) : json(nullptr)},
               {"config", json::parse(config_to_json(config))},
               {"simd_backend", r.simd_backend},
               {"samples", r.records.size()},
               {"theta_infinity", {{"conserved", r.theta_inf.conserved}, {"displayed", r.theta_inf.displayed}}},
               {"asymptotics", asym},
               {"final_state", final_state},
               {"invariants", invariants},
               {"all_invariants_pass", r.all_passed()}};
  if (r.oscillation) {
    root["oscillation"] = {{"verdict", verdict_name(r.oscillation->verdict)},
                           {"sup_gamma_l2", r.oscillation->sup_gamma_l2},
                           {"max_deviation", r.oscillation->max_deviation},
                           {"matches_closed_form", r.oscillation->matches_closed_form}};
  }
  if (!r.stability.empty()) {
    json rows = json::array();
    for (const auto& s : r.stability) {
      rows.push_back({{"delta", s.delta},
                      {"distance_initial", s.distance_initial},
                      {"distance_final", s.distance_final},
                      {"ratio", s.ratio}});
    }
    root["stability"] = rows;
  }
  return root.dump(2) + '\n';
}

int run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& err) {
  try {
    config.validate();
    CsvWriter csv(out_dir / config.csv_path);
    const RunResult result = execute(config, [&](const DiagnosticsRecord& rec) { csv.write(rec); });
    csv.close();
    write_text_file(out_dir / config.summary_path, summary_json(config, result));
    return 0;
  } catch (const Error& e) {
    err << error_json(e) << '\n';
    return exit_code(e.kind());
  }
}

}  // namespace thermo
