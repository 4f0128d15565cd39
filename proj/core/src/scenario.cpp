#include "majsim/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "majsim/errors.hpp"
#include "majsim/propagator.hpp"

namespace majsim {

std::vector<std::string> EvolutionPlan::validate() const {
  std::vector<std::string> errs;
  if (!(dt > 0.0) || !std::isfinite(dt)) errs.emplace_back("dt must be positive");
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].step > n_steps) {
      errs.push_back("events[" + std::to_string(i) + "] is scheduled after the last step");
    }
  }
  return errs;
}

ScenarioResult run_scenario(const HamiltonianSpec& spec, const EvolutionPlan& plan, const Grid1D& grid,
                            const PacketSpec& packet, double x_c) {
  std::vector<std::string> warnings;
  SpinorField initial = gaussian_packet(grid, packet, components(spec.model), &warnings);
  ScenarioResult r = run_scenario(spec, plan, std::move(initial), x_c);
  r.warnings.insert(r.warnings.begin(), warnings.begin(), warnings.end());
  return r;
}

ScenarioResult run_scenario(const HamiltonianSpec& spec, const EvolutionPlan& plan, SpinorField state,
                            double x_c) {
  if (const auto errs = plan.validate(); !errs.empty()) {
    std::string msg = "invalid evolution plan:";
    for (const auto& e : errs) msg += " " + e + ";";
    throw ValidationError(msg);
  }
  if (state.n_comp() != components(spec.model)) {
    throw ValidationError("initial field has " + std::to_string(state.n_comp()) + " components but model " +
                          std::string(to_string(spec.model)) + " needs " +
                          std::to_string(components(spec.model)));
  }

  const SplitFactors factors = build_hamiltonian(spec, state.grid);
  Propagator prop(factors, plan.dt);
  const ObservableProbe probe(state.grid, x_c);

  auto events = plan.events;
  std::stable_sort(events.begin(), events.end(),
                   [](const TimedEvent& a, const TimedEvent& b) { return a.step < b.step; });
  auto next_event = events.begin();

  ScenarioResult result{{}, {}, {}, {}, state, {}};
  for (std::size_t s = 0;; ++s) {
    while (next_event != events.end() && next_event->step == s) {
      state = apply_event(state, next_event->op);
      ++next_event;
    }
    const double t = static_cast<double>(s) * plan.dt;
    const bool last = s == plan.n_steps;
    if (s == 0 || last || (plan.observable_stride > 0 && s % plan.observable_stride == 0)) {
      ObservableRecord rec = probe.measure(state, t);
      if (s == 0) result.initial = rec;
      if (last) result.final = rec;
      rec.density.clear();
      rec.density.shrink_to_fit();
      result.series.push_back(std::move(rec));
    }
    if (plan.snapshot_stride > 0 && (s % plan.snapshot_stride == 0 || last)) {
      result.snapshots.push_back({t, state.amplitudes});
    }
    if (last) break;
    prop.step(state);
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace majsim
