// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thermo/config.hpp"

namespace thermo {

enum class Suite { Energy, Entropy, Fisher, Asymptotics, Stability, All };

// Throws Error(InvalidArgument) for names other than
// energy, entropy, fisher, asymptotics, stability, all.
Suite parse_suite(std::string_view name);

// Criterion ids run by a suite, ascending.
std::vector<int> suite_criteria(Suite suite);

enum class Relation { Less, LessEqual, Greater, GreaterEqual };

struct Check {
  std::string label;
  double value = 0.0;
  Relation relation = Relation::LessEqual;
  double limit = 0.0;

  bool passed() const;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Check> checks;
  double seconds = 0.0;
  std::string error;  // set when the criterion threw

  bool passed() const;
};

// Runs the criteria of a suite. When base is given it replaces the small_data
// preset wherever that preset is the subject of a criterion.
std::vector<CriterionResult> verify(Suite suite, const std::optional<RunConfig>& base = std::nullopt);

// "PASS  1 energy_conservation  drift=... <= 1e-06; ..."
std::string criterion_line(const CriterionResult& result);

std::string verify_json(const std::vector<CriterionResult>& results);

}  // namespace thermo
