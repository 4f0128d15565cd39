#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "majsim/field.hpp"
#include "majsim/hamiltonian.hpp"
#include "majsim/observables.hpp"

namespace majsim {

struct TimedEvent {
  std::size_t step;  // applied to the state at time step * dt, before that step runs
  SymmetryOp op;
};

struct EvolutionPlan {
  double dt = 0.005;
  std::size_t n_steps = 0;
  std::vector<TimedEvent> events;
  std::size_t snapshot_stride = 0;    // 0 disables snapshots
  std::size_t observable_stride = 1;  // 0 records only the initial and final states

  std::vector<std::string> validate() const;
};

struct Snapshot {
  double t;
  Eigen::MatrixXcd amplitudes;
};

struct ScenarioResult {
  std::vector<ObservableRecord> series;  // density vectors are dropped except in `initial`/`final`
  ObservableRecord initial;
  ObservableRecord final;
  std::vector<Snapshot> snapshots;
  SpinorField final_state;
  std::vector<std::string> warnings;
};

// Evolves a Gaussian packet under `spec`, applying timed symmetry events.
// Deterministic: identical inputs give bit-identical results.
ScenarioResult run_scenario(const HamiltonianSpec& spec, const EvolutionPlan& plan, const Grid1D& grid,
                            const PacketSpec& packet, double x_c);

// Same, from an explicit initial field.
ScenarioResult run_scenario(const HamiltonianSpec& spec, const EvolutionPlan& plan, SpinorField initial,
                            double x_c);

}  // namespace majsim
