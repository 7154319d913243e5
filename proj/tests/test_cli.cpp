// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "thermo/output.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int status = -1;
  std::string out;
};

// Runs the driver through the shell; stderr is folded into out when merge is set.
Outcome cli(const std::string& args, bool merge = false, const std::string& env = "") {
  const std::string cmd = env + " '" + std::string(THERMO_CLI_PATH) + "' " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Outcome o;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return o;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("thermo_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(Cli, Presets) {
  const Outcome o = cli("presets");
  EXPECT_EQ(o.status, 0);
  EXPECT_EQ(std::count(o.out.begin(), o.out.end(), '\n'), 7);
  EXPECT_NE(o.out.find("small_data\t"), std::string::npos);
}

TEST(Cli, Modes) {
  const Outcome o = cli(R"(modes --domain '{"cutoff": 1, "grid_n": 3}')");
  ASSERT_EQ(o.status, 0);
  const json j = json::parse(o.out);
  EXPECT_EQ(j["scalar_modes"].size(), 4u);
  EXPECT_EQ(j["vector_modes"].size(), 4u);
  EXPECT_EQ(j["domain"]["cutoff"], 1);
}

TEST(Cli, ErrorStatuses) {
  const Outcome bad_domain = cli(R"(modes --domain '{"cutoff": 0}')", true);
  EXPECT_EQ(bad_domain.status, 2);
  EXPECT_EQ(json::parse(bad_domain.out)["error"]["kind"], "Config");

  const Outcome missing = cli("simulate --config /nonexistent/thermo.json", true);
  EXPECT_EQ(missing.status, 3);
  EXPECT_EQ(json::parse(missing.out)["error"]["kind"], "Io");

  const Outcome suite = cli("verify --suite everything", true);
  EXPECT_EQ(suite.status, 10);
  EXPECT_EQ(json::parse(suite.out)["error"]["kind"], "InvalidArgument");

  EXPECT_EQ(cli("").status, 64);
  EXPECT_EQ(cli("simulate").status, 64);
  EXPECT_EQ(cli("--help").status, 0);
}

TEST(Cli, NegativeTemperatureConfig) {
  const fs::path dir = scratch("neg");
  thermo::write_text_file(dir / "c.json",
                          R"({"initial": {"theta_modes": [{"k": 2, "l": 0, "amplitude": 3}]}, "run": {"t_end": 1}})");
  const Outcome o = cli("simulate --config '" + (dir / "c.json").string() + "' --out-dir '" + dir.string() + "'", true);
  EXPECT_EQ(o.status, 4);
  EXPECT_EQ(json::parse(o.out)["error"]["kind"], "NonPositiveTemperature");
  fs::remove_all(dir);
}

TEST(Cli, SimulateScalarAndVectorBackendsAgree) {
  const fs::path dir = scratch("sim");
  thermo::write_text_file(dir / "c.json", R"({"run": {"preset": "small_data", "t_end": 0.2},
                                              "stepper": {"sample_every": 5}})");
  const std::string cfg = "simulate --config '" + (dir / "c.json").string() + "' --out-dir ";
  const Outcome a = cli(cfg + "'" + (dir / "a").string() + "'", false, "THERMO_SIMD=scalar THERMO_THREADS=1");
  const Outcome b = cli(cfg + "'" + (dir / "b").string() + "'");
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(b.status, 0);
  EXPECT_EQ(json::parse(a.out)["status"], "ok");
  const std::string csv = thermo::read_text_file(dir / "a" / "diagnostics.csv");
  EXPECT_EQ(csv, thermo::read_text_file(dir / "b" / "diagnostics.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 42);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  const json summary = json::parse(thermo::read_text_file(dir / "a" / "summary.json"));
  EXPECT_EQ(summary["simd_backend"], "scalar");
  EXPECT_EQ(summary["preset"], "small_data");
  fs::remove_all(dir);
}

TEST(Cli, VerifyEnergySuite) {
  const Outcome o = cli("verify --suite energy");
  EXPECT_EQ(o.status, 0) << o.out;
  EXPECT_EQ(o.out.rfind("PASS criterion 1 ", 0), 0u) << o.out;
  EXPECT_EQ(std::count(o.out.begin(), o.out.end(), '\n'), 1);
}

}  // namespace
