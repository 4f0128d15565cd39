#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <filesystem>

#include <Eigen/Dense>
#include <json.hpp>

#include "majsim/iontrap.hpp"

namespace majsim::cli {

struct VerifyThresholds {
  double min_fidelity = 0.99;
  double scaling_factor = 2.0;   // spread of (1 - F) (delta / eta_r Omega)^2 across detunings
  double slope_rel = 0.02;
  double protocol_rel = 0.03;
  double max_leakage = 1e-6;
  double max_norm_drift = 1e-8;
};

struct VerifyConfig {
  iontrap::IonTrapConfig trap = iontrap::IonTrapConfig::defaults();
  Eigen::Vector2cd spinor{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2};  // lifted onto qubits 1 and 2
  std::complex<double> alpha{0.0, 1.0};           // COM coherent amplitude
  std::size_t series_points = 400;
  std::size_t random_states = 8;
  std::uint64_t seed = 20240611;
};

// Keys absent from the document keep their defaults; nu_r and eta_r follow nu
// and eta unless given explicitly. Throws ConfigError listing every problem.
VerifyConfig parse_verify_config(const nlohmann::json& doc);
VerifyConfig parse_verify_config_file(const std::filesystem::path& path);
nlohmann::json serialize(const VerifyConfig& config);

// One mass period pi / mc2_sim, or 20 pi / delta when there is no mass term.
double verification_horizon(const iontrap::IonTrapConfig& config);

struct VerifyOutcome {
  nlohmann::json report;
  bool pass = false;
  bool aborted = false;  // the primary integration hit a truncation or numerical failure
};

// Dispersive fidelity over one mass period at delta, plus delta / sqrt 2 and
// delta / 2 for the deficit scaling and delta / 10 for the degradation check;
// the four integrations run on up to `threads` workers. Slopes of the
// measurement protocol are compared with direct expectations on the initial
// state, its momentum mirror and `random_states` random product states.
VerifyOutcome verify_iontrap(const VerifyConfig& config, unsigned threads,
                             const VerifyThresholds& thresholds = {});

}  // namespace majsim::cli
