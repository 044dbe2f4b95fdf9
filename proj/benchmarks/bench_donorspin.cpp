#include <benchmark/benchmark.h>

#include "donorspin/decoherence.hpp"
#include "donorspin/donor_spin.hpp"
#include "donorspin/echo_sim.hpp"
#include "donorspin/magic_fields.hpp"

using namespace donorspin;

namespace {

const TransitionSpec k1110{-4.0, Branch::plus, -5.0, Branch::unmixed};
const TransitionSpec k147{-1.0, Branch::plus, -2.0, Branch::minus};

void BM_BuildAndDiagonalize(benchmark::State& state) {
  const auto sp = bismuth();
  double b = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigensystem_numeric(sp, b));
    b = b < 0.5 ? b + 1e-4 : 0.1;
  }
}
BENCHMARK(BM_BuildAndDiagonalize);

void BM_AnalyticLevels(benchmark::State& state) {
  const auto sp = bismuth();
  double b = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic_levels(sp, b));
    b = b < 0.5 ? b + 1e-4 : 0.1;
  }
}
BENCHMARK(BM_AnalyticLevels);

void BM_EnumerateTransitions(benchmark::State& state) {
  const auto es = eigensystem_numeric(bismuth(), 0.15);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_transitions(es));
}
BENCHMARK(BM_EnumerateTransitions);

void BM_FindDrps(benchmark::State& state) {
  const auto sp = bismuth();
  for (auto _ : state)
    benchmark::DoNotOptimize(find_drps(sp, k1110, 0.01, 0.3, state.range(0)));
}
BENCHMARK(BM_FindDrps)->Arg(400)->Arg(800);

void BM_HahnEcho(benchmark::State& state) {
  const auto h = pair_hamiltonian(bismuth(), k147, 0.1, 3.3e4);
  const auto initial = PairState::ud();
  for (auto _ : state) benchmark::DoNotOptimize(hahn_echo(initial, h, 1e-4));
}
BENCHMARK(BM_HahnEcho);

void BM_EnsembleDecay(benchmark::State& state) {
  const auto sp = bismuth();
  BathConfig cfg;
  cfg.density = 5.04e19;
  cfg.radius = 1.5e-6;
  const auto bath = sample_bath(cfg, sp, 14, 7, 11);
  std::vector<double> times(201);
  for (int i = 0; i < 201; ++i) times[i] = 400.0 * i / 200.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(ensemble_decay(sp, k147, 0.1, bath, times, DecayMode::full));
}
BENCHMARK(BM_EnsembleDecay);

}  // namespace

BENCHMARK_MAIN();
