#include <benchmark/benchmark.h>

#include "majsim/iontrap.hpp"
#include "majsim/krylov.hpp"

using namespace majsim;
namespace it = majsim::iontrap;

namespace {

it::IonTrapConfig trap(int n_a, int n_b) {
  it::IonTrapConfig c = it::IonTrapConfig::defaults();
  c.n_a = n_a;
  c.n_b = n_b;
  return c;
}

void BM_InteractionHamiltonian(benchmark::State& state) {
  const auto c = trap(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(it::interaction_hamiltonian(c, t));
    t += 0.1;
  }
}

// One midpoint step of the register dynamics.
void BM_ExpmMultiply(benchmark::State& state) {
  const auto c = trap(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const double dt = it::default_time_step(c);
  const SparseMatrix h = it::interaction_hamiltonian(c, 0.5 * dt);
  Eigen::VectorXcd v = it::lifted_register_state(c, Eigen::Vector2cd(0.8, 0.6), it::coherent_state(c.n_a, {0.0, 1.0}));
  for (auto _ : state) {
    v = expm_multiply(h, dt, v);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_SlopeU1(benchmark::State& state) {
  const auto c = trap(24, 8);
  const Eigen::VectorXcd v =
      it::lifted_register_state(c, Eigen::Vector2cd(0.8, 0.6), it::coherent_state(c.n_a, {0.0, 1.0}));
  for (auto _ : state) benchmark::DoNotOptimize(it::slope_U1(c, v));
}

}  // namespace

BENCHMARK(BM_InteractionHamiltonian)->Args({24, 8})->Args({32, 16});
BENCHMARK(BM_ExpmMultiply)->Args({24, 8})->Args({32, 16});
BENCHMARK(BM_SlopeU1);
