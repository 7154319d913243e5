// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thermo/dynamics.hpp"
#include "thermo/spectral_basis.hpp"
#include "thermo/state.hpp"

namespace thermo {

struct StabilitySpec {
  std::vector<double> deltas;
  InitialSpec direction;
};

struct RunConfig {
  DomainSpec domain;
  PhysParams params;
  InitialSpec initial;
  StepperConfig stepper;
  double t_end = 0.0;
  std::string csv_path = "diagnostics.csv";
  std::string summary_path = "summary.json";
  std::optional<std::string> preset;
  std::optional<StabilitySpec> stability;

  // Checks every component invariant, including positivity of the assembled theta0.
  void validate() const;
};

// JSON object with optional keys domain, params, initial, stepper, run. A preset named
// in run.preset is expanded first and explicit keys override it. Unknown keys and
// wrongly typed values throw Error(Config) with a path such as "$.params.mu".
RunConfig parse_config(std::string_view text);

struct PresetInfo {
  std::string name;
  std::string description;
};

std::vector<PresetInfo> list_presets();
// Throws Error(Config) for an unknown name.
RunConfig preset_config(std::string_view name);

// Round-trippable JSON rendering of a configuration (the schema parse_config accepts).
std::string config_to_json(const RunConfig& config);

// DomainSpec from a JSON object with optional keys lx, ly, cutoff, grid_n.
DomainSpec parse_domain(std::string_view text);

}  // namespace thermo
