// SPDX-License-Identifier: Apache-2.0
// thermo: command-line driver for the thermoelastic spectral simulator.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "thermo/config.hpp"
#include "thermo/error.hpp"
#include "thermo/output.hpp"
#include "thermo/runner.hpp"
#include "thermo/spectral_basis.hpp"
#include "thermo/verification.hpp"

namespace {

constexpr int kVerifyFailed = 6;
constexpr int kUsage = 64;

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  const thermo::RunConfig config = thermo::parse_config(thermo::read_text_file(config_path));
  const int status = thermo::run(config, out_dir, std::cerr);
  if (status == 0) {
    const std::filesystem::path dir(out_dir);
    std::cout << nlohmann::json{{"status", "ok"},
                                {"csv", (dir / config.csv_path).string()},
                                {"summary", (dir / config.summary_path).string()}}
                     .dump()
              << '\n';
  }
  return status;
}

int cmd_verify(const std::string& suite_name, const std::string& config_path,
               const std::string& json_path) {
  const thermo::Suite suite = thermo::parse_suite(suite_name);
  std::optional<thermo::RunConfig> base;
  if (!config_path.empty()) base = thermo::parse_config(thermo::read_text_file(config_path));
  const auto results = thermo::verify(suite, base);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << thermo::criterion_line(r) << '\n';
    ok = ok && r.passed();
  }
  if (!json_path.empty()) thermo::write_text_file(json_path, thermo::verify_json(results));
  return ok ? 0 : kVerifyFailed;
}

int cmd_presets() {
  for (const auto& p : thermo::list_presets()) {
    std::cout << p.name << "\t" << p.description << '\n';
  }
  return 0;
}

int cmd_modes(const std::string& domain_json) {
  const thermo::DomainSpec d = thermo::parse_domain(domain_json);
  nlohmann::json scalar = nlohmann::json::array();
  for (const auto& m : thermo::enumerate_scalar_modes(d)) {
    scalar.push_back({{"k", m.k}, {"l", m.l}, {"xi", m.xi}});
  }
  nlohmann::json vector = nlohmann::json::array();
  for (const auto& m : thermo::enumerate_vector_modes(d)) {
    vector.push_back({{"kind", m.kind == thermo::VectorKind::Gradient ? "gradient" : "rotational"},
                      {"k", m.k},
                      {"l", m.l},
                      {"xi", m.xi}});
  }
  std::cout << nlohmann::json{{"domain", {{"lx", d.lx}, {"ly", d.ly}, {"cutoff", d.cutoff}, {"grid_n", d.grid_n}}},
                              {"scalar_modes", scalar},
                              {"vector_modes", vector}}
                   .dump(2)
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral simulator for nonlinear thermoelasticity on a rectangle"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  auto* simulate = app.add_subcommand("simulate", "Run one configuration, write CSV and JSON summary");
  simulate->add_option("--config", config_path, "JSON configuration file")->required();
  simulate->add_option("--out-dir", out_dir, "Output directory");

  std::string suite, verify_config, verify_json;
  auto* verify = app.add_subcommand("verify", "Run acceptance criteria");
  verify->add_option("--suite", suite, "energy|entropy|fisher|asymptotics|stability|all")->required();
  verify->add_option("--config", verify_config, "Configuration replacing the small_data preset");
  verify->add_option("--json", verify_json, "Also write results as JSON to this path");

  auto* presets = app.add_subcommand("presets", "List scenario presets");

  std::string domain_json;
  auto* modes = app.add_subcommand("modes", "List the modes of a domain");
  modes->add_option("--domain", domain_json, "Inline JSON, e.g. '{\"cutoff\":4}'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << nlohmann::json{{"error", {{"kind", "Usage"}, {"message", e.what()}, {"exit_code", kUsage}, {"t", nullptr}}}}
                     .dump()
              << '\n';
    return kUsage;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, out_dir);
    if (*verify) return cmd_verify(suite, verify_config, verify_json);
    if (*presets) return cmd_presets();
    if (*modes) return cmd_modes(domain_json);
  } catch (const thermo::Error& e) {
    std::cerr << thermo::error_json(e) << '\n';
    return thermo::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", {{"kind", "Internal"}, {"message", e.what()}, {"exit_code", 1}, {"t", nullptr}}}}
                     .dump()
              << '\n';
    return 1;
  }
  return kUsage;
}
