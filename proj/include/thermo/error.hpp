// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thermo {

enum class ErrorKind {
  InvalidArgument,
  DomainMismatch,
  InvalidMode,
  NonPositiveTemperature,
  NumericalBlowup,
  InsufficientSamples,
  Config,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Exit status used by the command-line driver for each failure kind.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::optional<double> time = std::nullopt)
      : std::runtime_error(message), kind_(kind), time_(time) {}

  ErrorKind kind() const { return kind_; }
  // Simulation time at which the failure was detected, when known.
  std::optional<double> time() const { return time_; }

 private:
  ErrorKind kind_;
  std::optional<double> time_;
};

}  // namespace thermo
