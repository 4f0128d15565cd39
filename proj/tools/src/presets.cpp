#include "majsim/cli/presets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace majsim::cli {

namespace {

// Shared barrier setup: m = 0.5, c = 1, ramp barrier of unit slope starting at
// x = 0, relativistic packet incident from the left.
constexpr double kMass = 0.5;
constexpr double kEventTime = 65.0;

ScenarioConfig barrier_base(std::string name, Model model) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.hamiltonian.model = model;
  c.hamiltonian.m = kMass;
  c.hamiltonian.c = 1.0;
  c.hamiltonian.potential = Potential::linear(1.0);
  c.n_points = 4096;
  c.x_min = -150.0;
  c.x_max = 150.0;
  c.packet.x0 = -60.0;
  c.packet.sigma = 5.0;
  c.packet.p0 = 1.5;
  c.packet.polarization = positive_energy_polarization(c.packet.p0, kMass, 1.0);
  c.dt = 0.005;
  c.t_final = 90.0;
  c.observable_stride = 100;
  c.snapshot_stride = 2000;
  c.x_c = 0.0;
  return c;
}

ScenarioConfig free_base(std::string name, Model model) {
  ScenarioConfig c = barrier_base(std::move(name), model);
  c.hamiltonian.potential = Potential::none();
  c.packet.x0 = 0.0;
  c.t_final = 20.0;
  c.observable_stride = 20;
  c.snapshot_stride = 1000;
  return c;
}

struct Entry {
  const char* name;
  const char* description;
  std::function<ScenarioConfig()> make;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"fig2a", "Dirac particle (m=0.5, c=1) scattering on a linear ramp V(x)=x for x>0",
       [] { return barrier_base("fig2a", Model::dirac2); }},
      {"fig2b", "fig2a with time reversal at t=65; the packet retraces its path by t=130",
       [] {
         ScenarioConfig c = barrier_base("fig2b", Model::dirac2);
         c.events = {{kEventTime, SymmetryOp::T}};
         c.t_final = 2.0 * kEventTime;
         return c;
       }},
      {"fig2c", "fig2a with charge conjugation mid-run at t=65, turning the particle into its antiparticle",
       [] {
         ScenarioConfig c = barrier_base("fig2c", Model::dirac2);
         c.events = {{kEventTime, SymmetryOp::C}};
         return c;
       }},
      {"fig2d", "Majorana particle (real bispinor, m=0.5, c=1) on the same ramp barrier",
       [] { return barrier_base("fig2d", Model::majorana4); }},
      {"free-dirac", "free massive Dirac packet, m=0.5, no potential",
       [] { return free_base("free-dirac", Model::dirac2); }},
      {"free-majorana", "free Majorana packet, m=0.5, no potential; pseudo-helicity is conserved",
       [] { return free_base("free-majorana", Model::majorana4); }},
      {"mixed-mass", "free packet combining Dirac (m_D=0.3) and Majorana (m_M=0.2) mass terms",
       [] {
         ScenarioConfig c = free_base("mixed-mass", Model::mixed_mass4);
         c.hamiltonian.m = 0.0;
         c.hamiltonian.m_D = 0.3;
         c.hamiltonian.m_M = 0.2;
         c.packet.polarization = positive_energy_polarization(c.packet.p0, 0.5, 1.0);
         return c;
       }},
  };
  return entries;
}

}  // namespace

std::vector<PresetInfo> list_scenarios() {
  std::vector<PresetInfo> out;
  for (const auto& e : registry()) out.push_back({e.name, e.description});
  std::sort(out.begin(), out.end(), [](const PresetInfo& a, const PresetInfo& b) { return a.name < b.name; });
  return out;
}

ScenarioConfig preset(std::string_view name) {
  for (const auto& e : registry()) {
    if (name == e.name) return e.make();
  }
  throw ValidationError("unknown preset '" + std::string(name) + "' (see `simulate list`)");
}

Eigen::Vector2cd positive_energy_polarization(double p, double m, double c) {
  const double mc2 = m * c * c;
  const double energy = std::sqrt(c * c * p * p + mc2 * mc2);
  Eigen::Vector2cd v(energy + mc2, c * p);
  if (v.squaredNorm() == 0.0) return {1.0, 0.0};
  return v.normalized();
}

}  // namespace majsim::cli
