// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "thermo/diagnostics.hpp"
#include "thermo/error.hpp"

namespace thermo {

// %.17g: round-trips every binary64 value.
std::string format_double(double value);

// Streams DiagnosticsRecord rows as CSV with a header line and LF endings.
class CsvWriter {
 public:
  // Throws Error(Io) when the file cannot be created.
  explicit CsvWriter(const std::filesystem::path& path);

  void write(const DiagnosticsRecord& record);
  // Flushes and checks the stream; throws Error(Io) on a write failure.
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

std::string csv_header();
std::string csv_row(const DiagnosticsRecord& record);

// {"error": {"kind": ..., "message": ..., "exit_code": ..., "t": <number or null>}}
std::string error_json(const Error& error);

// Writes text to path, creating parent directories. Throws Error(Io).
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Reads a whole file. Throws Error(Io).
std::string read_text_file(const std::filesystem::path& path);

}  // namespace thermo
