#include <benchmark/benchmark.h>

#include <random>

#include "hilbperv/generating_series.hpp"
#include "hilbperv/perversity.hpp"
#include "hilbperv/presets.hpp"
#include "hilbperv/wreath.hpp"

using namespace hilbperv;

namespace {

const char* kPresets[] = {"d4", "abelian", "k3"};

void BM_CupRandomPairs(benchmark::State& state) {
  WreathAlgebra algebra(preset(kPresets[state.range(0)]), static_cast<std::size_t>(state.range(1)));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> pick(0, algebra.dimension() - 1);
  std::vector<std::pair<WreathElement, WreathElement>> pairs;
  for (int i = 0; i < 1024; ++i) pairs.emplace_back(algebra.element_at(pick(rng)), algebra.element_at(pick(rng)));
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [x, y] = pairs[k++ & 1023];
    benchmark::DoNotOptimize(algebra.cup(x, y));
  }
  state.SetLabel(kPresets[state.range(0)]);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CupRandomPairs)->ArgsProduct({{0, 1, 2}, {2, 3, 4}});

void BM_CupThreeCycleSquare(benchmark::State& state) {
  WreathAlgebra algebra(preset("k3"), 3);
  WreathElement c = algebra.parse_element("1;(1 2 3)");
  for (auto _ : state) benchmark::DoNotOptimize(algebra.cup(c, c));
}
BENCHMARK(BM_CupThreeCycleSquare);

void BM_Multiplicativity(benchmark::State& state) {
  WreathAlgebra algebra(preset("d4"), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_multiplicativity(algebra));
}
BENCHMARK(BM_Multiplicativity)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ClosedForm(benchmark::State& state) {
  const SeriesSpec spec = SeriesSpec::parse("dynkin8", static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(closed_form(spec));
}
BENCHMARK(BM_ClosedForm)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_PartitionSum(benchmark::State& state) {
  const BigradedDims dims = perverse_table(preset("k3"));
  for (auto _ : state) benchmark::DoNotOptimize(partition_sum(dims, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PartitionSum)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
