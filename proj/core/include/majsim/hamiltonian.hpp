#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "majsim/grid.hpp"

namespace majsim {

enum class Model {
  dirac2,         // H = c sigma_x p + m c^2 sigma_z + q V
  dirac_lifted4,  // reality-preserving lift of dirac2
  majorana4,      // c (1 x sigma_x) p - m c^2 sigma_x x sigma_y - sigma_y x 1 V
  mixed_mass4,    // majorana4 with m_M plus lifted Dirac mass m_D
};

std::string_view to_string(Model model);
Model model_from_string(std::string_view name);
int components(Model model);

struct Potential {
  enum class Kind { none, linear, tabulated };

  Kind kind = Kind::none;
  double alpha = 0.0;           // V(x) = alpha * max(x, 0) for Kind::linear: a ramp barrier at x = 0
  std::vector<double> values;   // V(x_j) for Kind::tabulated

  static Potential none() { return {}; }
  static Potential linear(double alpha) { return {Kind::linear, alpha, {}}; }
  static Potential tabulated(std::vector<double> v) { return {Kind::tabulated, 0.0, std::move(v)}; }

  // Samples V on the grid; tabulated potentials must match its size.
  std::vector<double> sample(const Grid1D& grid) const;
};

struct HamiltonianSpec {
  Model model = Model::dirac2;
  double m = 0.0;    // mass for dirac2, dirac_lifted4, majorana4
  double m_D = 0.0;  // Dirac mass for mixed_mass4
  double m_M = 0.0;  // Majorana mass for mixed_mass4
  double c = 1.0;
  Potential potential;
  int charge = 1;

  // Returns every violated invariant; empty when valid.
  std::vector<std::string> validate() const;
  void require_valid() const;
};

// Split-operator factors. The kinetic part is c * k * kinetic_spin at
// momentum k with kinetic_spin an involution; the local part at grid point j
// is mass + V_j * potential_coupling.
struct SplitFactors {
  Grid1D grid;
  int n_comp;
  double c;
  Eigen::MatrixXcd kinetic_spin;
  Eigen::MatrixXcd mass;
  Eigen::MatrixXcd potential_coupling;
  std::vector<double> potential;

  Eigen::MatrixXcd local(std::size_t j) const;
  // Full n_comp x n_comp symbol at momentum k for a constant potential value v.
  Eigen::MatrixXcd symbol(double k, double v = 0.0) const;
};

SplitFactors build_hamiltonian(const HamiltonianSpec& spec, const Grid1D& grid);

}  // namespace majsim
