#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "majsim/cli/config.hpp"
#include "majsim/cli/format.hpp"
#include "majsim/cli/presets.hpp"
#include "majsim/cli/runner.hpp"
#include "majsim/cli/verify.hpp"
#include "majsim/errors.hpp"

namespace cli = majsim::cli;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kNumerical = 3;

int cmd_list() {
  std::size_t width = 0;
  const auto presets = cli::list_scenarios();
  for (const auto& p : presets) width = std::max(width, p.name.size());
  for (const auto& p : presets) std::printf("%-*s  %s\n", static_cast<int>(width), p.name.c_str(), p.description.c_str());
  return kOk;
}

int cmd_run(const std::vector<std::string>& config_paths, const std::vector<std::string>& presets, std::string out) {
  std::vector<cli::ScenarioConfig> configs;
  for (const auto& name : presets) configs.push_back(cli::preset(name));
  for (const auto& path : config_paths) configs.push_back(cli::parse_config_file(path));
  if (configs.empty()) throw majsim::ValidationError("run needs --config or --preset");
  if (out.empty()) {
    if (configs.size() == 1 && configs.front().directory) {
      out = *configs.front().directory;
    } else {
      throw majsim::ValidationError("run needs --out (or outputs.directory in a single config)");
    }
  }
  for (const auto& r : cli::run_all(configs, out, cli::sim_threads())) {
    std::printf("%s: transmission %.6f, reflection %.6f -> %s\n", r.name.c_str(),
                r.summary.at("transmission").get<double>(), r.summary.at("reflection").get<double>(),
                r.directory.string().c_str());
    for (const auto& w : r.summary.at("warnings")) std::fprintf(stderr, "warning: %s: %s\n", r.name.c_str(), w.get<std::string>().c_str());
  }
  return kOk;
}

int cmd_verify(const std::string& config_path, const std::string& out) {
  const cli::VerifyConfig cfg = config_path.empty() ? cli::VerifyConfig{} : cli::parse_verify_config_file(config_path);
  const std::string started = cli::utc_timestamp();
  const cli::VerifyOutcome outcome = cli::verify_iontrap(cfg, cli::sim_threads());
  cli::OutputDir dir(out);
  const std::string report = outcome.report.dump(2) + "\n";
  dir.write("report.json", report);
  dir.write_manifest({{"tool", "simulate"},
                      {"version", MAJSIM_VERSION},
                      {"command", "verify-iontrap"},
                      {"config_crc32", cli::crc32_hex(outcome.report.at("config").dump())},
                      {"started", started},
                      {"finished", cli::utc_timestamp()}});
  for (const auto& c : outcome.report.at("checks")) {
    const bool pass = c.at("pass").get<bool>();
    std::printf("%s %s", pass ? "PASS" : "FAIL", c.at("name").get<std::string>().c_str());
    if (c.contains("error")) {
      std::printf(": %s", c.at("error").get<std::string>().c_str());
    } else if (!c.at("value").is_null()) {
      std::printf(": %.6g (threshold %.6g)", c.at("value").get<double>(), c.at("threshold").get<double>());
    }
    std::printf("\n");
  }
  std::printf("%s -> %s\n", outcome.pass ? "verification passed" : "verification failed", out.c_str());
  if (outcome.aborted) return kNumerical;
  return outcome.pass ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorana / Dirac 1+1D simulator and two-ion trap verification"};
  app.require_subcommand(1);

  std::vector<std::string> run_configs, run_presets;
  std::string run_out;
  CLI::App* run = app.add_subcommand("run", "run scenarios from config files or built-in presets");
  run->add_option("--config", run_configs, "scenario config (JSON); repeatable");
  run->add_option("--preset", run_presets, "built-in scenario name; repeatable");
  run->add_option("--out", run_out, "output directory");

  std::string verify_config, verify_out;
  CLI::App* verify = app.add_subcommand("verify-iontrap", "compare full and effective ion-trap dynamics");
  verify->add_option("--config", verify_config, "ion-trap config (JSON); defaults when omitted");
  verify->add_option("--out", verify_out, "output directory")->required();

  CLI::App* list = app.add_subcommand("list", "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (list->parsed()) return cmd_list();
    if (run->parsed()) return cmd_run(run_configs, run_presets, run_out);
    if (verify->parsed()) return cmd_verify(verify_config, verify_out);
  } catch (const cli::ConfigError& e) {
    std::fprintf(stderr, "error: invalid configuration\n");
    for (const auto& msg : e.errors()) std::fprintf(stderr, "  %s\n", msg.c_str());
    return kValidation;
  } catch (const majsim::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const majsim::NumericalError& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kOk;
}
