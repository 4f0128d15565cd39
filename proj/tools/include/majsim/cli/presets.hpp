#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "majsim/cli/config.hpp"

namespace majsim::cli {

struct PresetInfo {
  std::string name;
  std::string description;
};

// Built-in scenarios, sorted by name.
std::vector<PresetInfo> list_scenarios();

// Throws ValidationError for an unknown name.
ScenarioConfig preset(std::string_view name);

// Positive-energy eigenvector of c sigma_x p + m c^2 sigma_z at momentum p.
Eigen::Vector2cd positive_energy_polarization(double p, double m, double c);

}  // namespace majsim::cli
