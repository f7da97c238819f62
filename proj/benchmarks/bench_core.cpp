#include <benchmark/benchmark.h>

#include "thinprod/constants.hpp"
#include "thinprod/products.hpp"
#include "thinprod/sieve.hpp"
#include "thinprod/special.hpp"

using namespace thinprod;

static void BM_EnumeratePrimes(benchmark::State& state) {
  SieveConfig cfg;
  cfg.limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    std::uint64_t sum = 0;
    enumerate_primes(cfg, [&](std::uint64_t p) { sum += p; });
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnumeratePrimes)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_AccumulateClasses64(benchmark::State& state) {
  const Modulus mod = Modulus::from_exponent(6);
  const std::vector<std::uint64_t> checkpoints = {
      static_cast<std::uint64_t>(state.range(0))};
  for (auto _ : state) {
    const ClassSeriesTable table = accumulate_classes(mod, checkpoints);
    benchmark::DoNotOptimize(table.rows[0][0].log_a);
  }
}
BENCHMARK(BM_AccumulateClasses64)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_WilliamsTable(benchmark::State& state) {
  const UnitGroup group(Modulus::from_exponent(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    const WilliamsTable table = williams_table(group, 1'000'000);
    benchmark::DoNotOptimize(table.log_kw.back());
  }
}
BENCHMARK(BM_WilliamsTable)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_Digamma(benchmark::State& state) {
  double x = 0.123;
  for (auto _ : state) {
    benchmark::DoNotOptimize(digamma(x));
    x += 1e-9;
  }
}
BENCHMARK(BM_Digamma);

BENCHMARK_MAIN();
