// SPDX-License-Identifier: Apache-2.0
#include "thermo/output.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace thermo {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_header() {
  std::string line;
  for (const auto& name : DiagnosticsRecord::column_names()) {
    if (!line.empty()) line += ',';
    line += name;
  }
  return line + '\n';
}

std::string csv_row(const DiagnosticsRecord& record) {
  std::string line;
  bool first = true;
  for (double v : record.values()) {
    if (!first) line += ',';
    line += format_double(v);
    first = false;
  }
  return line + '\n';
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out_ << csv_header();
}

void CsvWriter::write(const DiagnosticsRecord& record) {
  out_ << csv_row(record);
  if (!out_) throw Error(ErrorKind::Io, "write failed on " + path_.string());
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw Error(ErrorKind::Io, "write failed on " + path_.string());
  out_.close();
}

std::string error_json(const Error& error) {
  nlohmann::json body = {{"kind", std::string(to_string(error.kind()))},
                         {"message", error.what()},
                         {"exit_code", exit_code(error.kind())},
                         {"t", nullptr}};
  if (error.time()) body["t"] = *error.time();
  return nlohmann::json{{"error", body}}.dump();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed on " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace thermo
