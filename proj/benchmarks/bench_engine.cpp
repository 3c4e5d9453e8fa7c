#include <benchmark/benchmark.h>

#include <complex>

#include "cfrac/engine.hpp"
#include "cfrac/projective.hpp"
#include "cfrac/sequence.hpp"

namespace {

cfrac::ElementSequence van_vleck_sequence(std::size_t count) {
  return cfrac::ElementSequence::generated(
      [](std::size_t n) { return std::polar(1.0 + 0.5 * static_cast<double>(n % 7), 0.3); }, count);
}

void BM_WallisEulerConvergent(benchmark::State& state) {
  const auto seq = van_vleck_sequence(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfrac::convergent(seq, seq.count()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WallisEulerConvergent)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_MoebiusCompositionChain(benchmark::State& state) {
  const auto seq = van_vleck_sequence(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto m = cfrac::MoebiusMap::identity();
    for (auto b : seq.elements()) m = cfrac::mobius_compose(m, cfrac::s_map(b));
    benchmark::DoNotOptimize(m.apply(cfrac::ExtendedComplex(0.0)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MoebiusCompositionChain)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_TailSequence(benchmark::State& state) {
  const auto seq = van_vleck_sequence(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfrac::tail_sequence(seq, seq.count(), cfrac::ExtendedComplex(0.5)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TailSequence)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_EvenOddLimitsSternStolz(benchmark::State& state) {
  const auto seq = cfrac::ElementSequence::geometric(1.0, 0.7, 2000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cfrac::even_odd_limits(seq, 1e-12, 2000));
  }
}
BENCHMARK(BM_EvenOddLimitsSternStolz);

}  // namespace
