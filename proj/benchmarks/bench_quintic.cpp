#include <benchmark/benchmark.h>

#include "tfib/fibration.hpp"
#include "tfib/quintic.hpp"

namespace {

void BM_BuildQuintic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tfib::quintic::build_quintic_fibration());
}
BENCHMARK(BM_BuildQuintic)->Unit(benchmark::kMillisecond);

void BM_ValidateQuintic(benchmark::State& state) {
  const auto g = tfib::quintic::build_quintic_fibration();
  for (auto _ : state) benchmark::DoNotOptimize(tfib::validate(g));
}
BENCHMARK(BM_ValidateQuintic)->Unit(benchmark::kMillisecond);

void BM_QuinticInvariants(benchmark::State& state) {
  const auto g = tfib::quintic::build_quintic_fibration();
  for (auto _ : state) benchmark::DoNotOptimize(tfib::quintic::quintic_invariants(g));
}
BENCHMARK(BM_QuinticInvariants)->Unit(benchmark::kMillisecond);

void BM_Dualize(benchmark::State& state) {
  const auto g = tfib::quintic::build_quintic_fibration();
  for (auto _ : state) benchmark::DoNotOptimize(tfib::dualize(g));
}
BENCHMARK(BM_Dualize)->Unit(benchmark::kMillisecond);

}  // namespace
