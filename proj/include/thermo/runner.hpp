// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thermo/asymptotics.hpp"
#include "thermo/config.hpp"

namespace thermo {

// max_i |E(t_i) - E(t_0)| / |E(t_0)| over energy_total.
double energy_drift(std::span<const DiagnosticsRecord> series);

// |dS - I| / |dS| with dS = entropy(t_end) - entropy(t_0) and I the trapezoidal
// integral of entropy_production. When |dS| <= 1e-14 the absolute gap is returned.
double entropy_identity_error(std::span<const DiagnosticsRecord> series);

// max_i F(t_i) / F(t_0) - 1; 0 when F(t_0) = 0 and F stays 0.
double fisher_growth(std::span<const DiagnosticsRecord> series);

enum class CheckStatus { Pass, Fail, Skipped };

struct InvariantCheck {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  double value = 0.0;
  double limit = 0.0;
  std::string note;
};

struct FinalNorms {
  double t = 0.0;
  double u_h = 0.0;
  double u_l2 = 0.0;
  double v_l2 = 0.0;
  double theta_l2 = 0.0;
  double theta_mean = 0.0;
  double min_theta = 0.0;
  double max_theta = 0.0;
  double energy_total = 0.0;
  double fisher_F = 0.0;
};

struct RunResult {
  std::vector<DiagnosticsRecord> records;
  SimState final_state;
  FinalNorms final_norms;
  ThetaInfinity theta_inf;
  AsymptoticsReport report;
  std::optional<OscillationReport> oscillation;
  std::vector<InvariantCheck> invariants;
  std::vector<StabilityRow> stability;
  std::string simd_backend;

  bool all_passed() const;
};

using RecordSink = std::function<void(const DiagnosticsRecord&)>;

// Runs the configured simulation (and the stability table when configured) in
// memory. Every emitted record is also passed to sink when it is set.
RunResult execute(const RunConfig& config, const RecordSink& sink = nullptr);

std::string summary_json(const RunConfig& config, const RunResult& result);

// Writes <out_dir>/<csv_path> and <out_dir>/<summary_path>. Returns 0 on success;
// on failure prints error_json to err and returns exit_code(kind).
int run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& err);

}  // namespace thermo
