#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "majsim/errors.hpp"
#include "majsim/field.hpp"
#include "majsim/hamiltonian.hpp"
#include "majsim/scenario.hpp"

namespace majsim::cli {

// Every problem found in a document, each prefixed with its field path.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct EventSpec {
  double t = 0.0;
  SymmetryOp op = SymmetryOp::T;
};

struct ScenarioConfig {
  std::string name;
  HamiltonianSpec hamiltonian;

  std::size_t n_points = 4096;
  double x_min = -150.0;
  double x_max = 150.0;

  PacketSpec packet;

  double dt = 0.005;
  double t_final = 0.0;
  std::vector<EventSpec> events;
  std::size_t observable_stride = 1;

  std::size_t snapshot_stride = 0;
  double x_c = 0.0;
  std::optional<std::string> directory;

  Grid1D grid() const;
  std::size_t n_steps() const;
  EvolutionPlan plan() const;
};

// Physical and cross-field checks; every message starts with a field path.
std::vector<std::string> validate(const ScenarioConfig& config);

// Strict parse: unknown keys, wrong types, missing required keys and
// validation failures are all collected into one ConfigError.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig parse_config_file(const std::filesystem::path& path);

// Normalized form: every optional field written out explicitly, so
// serialize(parse_config(serialize(c))) == serialize(c).
nlohmann::json serialize(const ScenarioConfig& config);

// Shared helpers for strict JSON reading.
class FieldReader {
 public:
  FieldReader(const nlohmann::json& obj, std::string path, std::vector<std::string>& errors);

  bool ok() const { return obj_ != nullptr; }
  bool has(const std::string& key) const;
  const nlohmann::json* child(const std::string& key, bool required);
  std::string path_of(const std::string& key) const;

  void number(const std::string& key, double& out, bool required);
  void integer(const std::string& key, long long& out, bool required);
  void count(const std::string& key, std::size_t& out, bool required);
  void string(const std::string& key, std::string& out, bool required);
  void complex_pair(const std::string& key, std::complex<double>& out, bool required);
  void error(const std::string& key, const std::string& message);

  // Reports every key that was never read.
  void finish();

 private:
  const nlohmann::json* obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::vector<std::string> seen_;
};

std::complex<double> complex_from_json(const nlohmann::json& v, const std::string& path,
                                       std::vector<std::string>& errors);
nlohmann::json complex_to_json(std::complex<double> z);

nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace majsim::cli
