#include <random>

#include <benchmark/benchmark.h>

#include "tfib/lattice.hpp"
#include "tfib/random.hpp"

namespace {

tfib::IntMatrix random_dense(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> entry(-9, 9);
  tfib::IntMatrix A(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) A(r, c) = entry(rng);
  return A;
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(20240101);
  const tfib::IntMatrix A = random_dense(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(tfib::smith_normal_form(A));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(10)->Arg(30);

void BM_ElementaryDivisors(benchmark::State& state) {
  std::mt19937_64 rng(20240101);
  const tfib::IntMatrix A = random_dense(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(tfib::elementary_divisors(A));
}
BENCHMARK(BM_ElementaryDivisors)->Arg(10)->Arg(30);

void BM_KernelSaturated(benchmark::State& state) {
  std::mt19937_64 rng(20240101);
  const auto n = static_cast<std::size_t>(state.range(0));
  const tfib::IntMatrix A = random_dense(n, rng);
  const tfib::IntMatrix B = tfib::vstack({A, A});
  for (auto _ : state) benchmark::DoNotOptimize(tfib::kernel_saturated(B.transpose()));
}
BENCHMARK(BM_KernelSaturated)->Arg(10)->Arg(20);

}  // namespace
