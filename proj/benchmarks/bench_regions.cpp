#include <benchmark/benchmark.h>

#include <numbers>

#include "cfrac/value_regions.hpp"

namespace {

void BM_TheoremSweep(benchmark::State& state) {
  cfrac::SweepConfig config;
  config.theorem = state.range(1) == 0 ? cfrac::Theorem::kOriginDisk : cfrac::Theorem::kShiftedDisk;
  config.samples = static_cast<std::size_t>(state.range(0));
  config.theta_max = state.range(1) == 0 ? std::numbers::pi / 4 - 0.01 : std::numbers::pi / 2 - 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfrac::run_theorem_sweep(config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TheoremSweep)->Args({1000, 0})->Args({1000, 1})->Unit(benchmark::kMillisecond);

void BM_CertifyEvenConvergents(benchmark::State& state) {
  const auto seq = cfrac::ElementSequence::constant(std::polar(1.0, 0.4),
                                                    static_cast<std::size_t>(state.range(0)));
  const auto pairs = cfrac::paired_elements(seq, cfrac::Target::kEvenConvergents);
  const double c = cfrac::shifted_disk_constant(pairs.ps, pairs.qs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfrac::certify_even_convergents(seq, 0.0, cfrac::ShiftedDisk{c}));
  }
}
BENCHMARK(BM_CertifyEvenConvergents)->RangeMultiplier(8)->Range(8, 1 << 12);

void BM_CounterexampleEval(benchmark::State& state) {
  int step = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfrac::counterexample_eval(0.01 + 0.001 * step));
    step = (step + 1) % 490;
  }
}
BENCHMARK(BM_CounterexampleEval);

}  // namespace
