#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "majsim/cli/config.hpp"
#include "majsim/scenario.hpp"

namespace majsim::cli {

struct RunOutcome {
  std::string name;
  std::filesystem::path directory;
  nlohmann::json summary;
  nlohmann::json manifest;
};

std::string observables_csv(const ScenarioResult& result);
// Empty when the run kept no snapshots.
std::string snapshots_csv(const ScenarioResult& result, const Grid1D& grid);
nlohmann::json summarize(const ScenarioConfig& config, const ScenarioResult& result);

// Runs one scenario and writes config.json, observables.csv, snapshots.csv
// (when snapshot_stride > 0), summary.json and finally manifest.json into `dir`.
RunOutcome run_config(const ScenarioConfig& config, const std::filesystem::path& dir);

// Runs independent scenarios on up to `threads` workers. A single config
// writes into `out`; several write into out/<name>. Names must be unique.
// The first failure is rethrown after all workers finish.
std::vector<RunOutcome> run_all(const std::vector<ScenarioConfig>& configs, const std::filesystem::path& out,
                                unsigned threads);

}  // namespace majsim::cli
