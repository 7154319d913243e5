// SPDX-License-Identifier: Apache-2.0
#include "thermo/error.hpp"

namespace thermo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::InvalidMode: return "InvalidMode";
    case ErrorKind::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorKind::NumericalBlowup: return "NumericalBlowup";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::InvalidArgument: return 10;
    case ErrorKind::InvalidMode: return 9;
    case ErrorKind::Io: return 3;
    case ErrorKind::NonPositiveTemperature: return 4;
    case ErrorKind::NumericalBlowup: return 5;
    case ErrorKind::InsufficientSamples: return 7;
    case ErrorKind::DomainMismatch: return 8;
  }
  return 1;
}

}  // namespace thermo
