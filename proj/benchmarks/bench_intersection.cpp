#include <benchmark/benchmark.h>

#include "tfib/intersection.hpp"

namespace ix = tfib::intersection;

namespace {

void BM_CubicForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ix::cubic_form_table());
}
BENCHMARK(BM_CubicForm)->Unit(benchmark::kMillisecond);

void BM_RankAndRadical(benchmark::State& state) {
  const auto f = ix::cubic_form_table();
  for (auto _ : state) benchmark::DoNotOptimize(ix::rank_and_radical(f));
}
BENCHMARK(BM_RankAndRadical)->Unit(benchmark::kMillisecond);

void BM_Saturation(benchmark::State& state) {
  const auto f = ix::cubic_form_table();
  for (auto _ : state) benchmark::DoNotOptimize(ix::saturation_quotient(f));
}
BENCHMARK(BM_Saturation)->Unit(benchmark::kMillisecond);

void BM_Flop(benchmark::State& state) {
  const auto id = ix::interior_trapezoid();
  for (auto _ : state) benchmark::DoNotOptimize(ix::flop(0, id));
}
BENCHMARK(BM_Flop)->Unit(benchmark::kMillisecond);

}  // namespace
