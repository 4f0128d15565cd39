#include <benchmark/benchmark.h>

#include "majsim/field.hpp"
#include "majsim/hamiltonian.hpp"
#include "majsim/observables.hpp"
#include "majsim/propagator.hpp"

using namespace majsim;

namespace {

HamiltonianSpec spec_for(Model model) {
  HamiltonianSpec s;
  s.model = model;
  if (model == Model::mixed_mass4) {
    s.m_D = 0.3;
    s.m_M = 0.2;
  } else {
    s.m = 0.5;
  }
  s.potential = Potential::linear(1.0);
  return s;
}

// range(0): model index, range(1): grid points
void BM_PropagatorStep(benchmark::State& state) {
  const auto model = static_cast<Model>(state.range(0));
  const Grid1D g(static_cast<std::size_t>(state.range(1)), -150.0, 150.0);
  Propagator prop(build_hamiltonian(spec_for(model), g), 0.005);
  SpinorField f = gaussian_packet(g, {-40.0, 5.0, 3.0, Eigen::Vector2cd(1.0, 0.0)}, components(model));
  for (auto _ : state) {
    prop.step(f);
    benchmark::DoNotOptimize(f.amplitudes.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(std::string(to_string(model)));
}

void BM_Measure(benchmark::State& state) {
  const Grid1D g(static_cast<std::size_t>(state.range(0)), -150.0, 150.0);
  const ObservableProbe probe(g, 0.0);
  const SpinorField f = gaussian_packet(g, {-40.0, 5.0, 3.0, Eigen::Vector2cd(1.0, 0.0)}, 4);
  for (auto _ : state) benchmark::DoNotOptimize(probe.measure(f, 0.0));
}

}  // namespace

BENCHMARK(BM_PropagatorStep)
    ->ArgsProduct({{static_cast<int>(Model::dirac2), static_cast<int>(Model::dirac_lifted4),
                    static_cast<int>(Model::majorana4), static_cast<int>(Model::mixed_mass4)},
                   {1024, 4096, 16384}});
BENCHMARK(BM_Measure)->Arg(4096)->Arg(16384);

BENCHMARK_MAIN();
