#include <benchmark/benchmark.h>

#include <kochtrace/tree.hpp>

static void BM_decompose_arc(benchmark::State& state) {
  koch::Rat x = koch::make_rat(1, 48);
  koch::Rat y = koch::make_rat(5, 6);
  for (auto _ : state) {
    auto dec = koch::decompose_arc(x, y);
    benchmark::DoNotOptimize(dec);
  }
}
BENCHMARK(BM_decompose_arc);

BENCHMARK_MAIN();
