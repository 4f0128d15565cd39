#include "majsim/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "majsim/errors.hpp"
#include "majsim/lift.hpp"
#include "majsim/pauli.hpp"

namespace majsim {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::dirac2: return "dirac2";
    case Model::dirac_lifted4: return "dirac-lifted4";
    case Model::majorana4: return "majorana4";
    case Model::mixed_mass4: return "mixed-mass4";
  }
  return "unknown";
}

Model model_from_string(std::string_view name) {
  if (name == "dirac2") return Model::dirac2;
  if (name == "dirac-lifted4") return Model::dirac_lifted4;
  if (name == "majorana4") return Model::majorana4;
  if (name == "mixed-mass4") return Model::mixed_mass4;
  throw ValidationError("unknown model '" + std::string(name) + "'");
}

int components(Model model) { return model == Model::dirac2 ? 2 : 4; }

std::vector<double> Potential::sample(const Grid1D& grid) const {
  std::vector<double> v(grid.size(), 0.0);
  switch (kind) {
    case Kind::none: break;
    case Kind::linear:
      for (std::size_t j = 0; j < grid.size(); ++j) v[j] = alpha * std::max(grid.x(j), 0.0);
      break;
    case Kind::tabulated:
      if (values.size() != grid.size()) {
        throw ValidationError("tabulated potential has " + std::to_string(values.size()) +
                              " samples but the grid has " + std::to_string(grid.size()));
      }
      v = values;
      break;
  }
  return v;
}

std::vector<std::string> HamiltonianSpec::validate() const {
  std::vector<std::string> errs;
  if (!(c > 0.0) || !std::isfinite(c)) errs.emplace_back("c must be positive");
  if (!(m >= 0.0) || !std::isfinite(m)) errs.emplace_back("m must be non-negative");
  if (!(m_D >= 0.0) || !std::isfinite(m_D)) errs.emplace_back("m_D must be non-negative");
  if (!(m_M >= 0.0) || !std::isfinite(m_M)) errs.emplace_back("m_M must be non-negative");
  if (charge != 1 && charge != -1) errs.emplace_back("charge must be +1 or -1");
  if (potential.kind == Potential::Kind::linear && !std::isfinite(potential.alpha)) {
    errs.emplace_back("potential.alpha must be finite");
  }
  for (double v : potential.values) {
    if (!std::isfinite(v)) {
      errs.emplace_back("potential.values must be finite");
      break;
    }
  }
  return errs;
}

void HamiltonianSpec::require_valid() const {
  const auto errs = validate();
  if (errs.empty()) return;
  std::string msg = "invalid Hamiltonian:";
  for (const auto& e : errs) msg += " " + e + ";";
  throw ValidationError(msg);
}

Eigen::MatrixXcd SplitFactors::local(std::size_t j) const {
  return mass + potential[j] * potential_coupling;
}

Eigen::MatrixXcd SplitFactors::symbol(double k, double v) const {
  return c * k * kinetic_spin + mass + v * potential_coupling;
}

SplitFactors build_hamiltonian(const HamiltonianSpec& spec, const Grid1D& grid) {
  spec.require_valid();
  const double c2 = spec.c * spec.c;
  const double q = static_cast<double>(spec.charge);
  const Eigen::MatrixXcd zero2 = Eigen::MatrixXcd::Zero(2, 2);

  SplitFactors f{grid, components(spec.model), spec.c, {}, {}, {}, spec.potential.sample(grid)};

  if (spec.model == Model::dirac2) {
    f.kinetic_spin = pauli::x();
    f.mass = spec.m * c2 * pauli::z();
    f.potential_coupling = q * Eigen::MatrixXcd::Identity(2, 2);
    return f;
  }

  // p is odd under complex conjugation, so the reality-preserving lift of
  // R * p is Theta(R) * p.
  f.kinetic_spin = lift::lift_linear_operator(pauli::x()).matrix;

  Eigen::MatrixXcd dirac_mass = zero2;
  Eigen::MatrixXcd majorana_mass = zero2;
  switch (spec.model) {
    case Model::dirac_lifted4:
      dirac_mass = spec.m * c2 * pauli::z();
      break;
    case Model::majorana4:
      majorana_mass = -I * spec.m * c2 * pauli::y();
      break;
    case Model::mixed_mass4:
      dirac_mass = spec.m_D * c2 * pauli::z();
      majorana_mass = -I * spec.m_M * c2 * pauli::y();
      break;
    case Model::dirac2:
      break;
  }
  f.mass = lift::lift_hamiltonian_reality_preserving(dirac_mass, majorana_mass).matrix;
  f.potential_coupling =
      lift::lift_hamiltonian_reality_preserving(q * Eigen::MatrixXcd::Identity(2, 2), zero2).matrix;
  return f;
}

}  // namespace majsim
