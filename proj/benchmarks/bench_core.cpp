#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "gcube/gowers.hpp"
#include "gcube/solver.hpp"
#include "gcube/terms.hpp"

using namespace gcube;

namespace {

LatticeFunction ramp(int n) {
  std::vector<Scalar> values;
  for (int j = 0; j < n; ++j) values.emplace_back(std::cos(0.7 * j), std::sin(1.3 * j));
  return LatticeFunction::from_values(values);
}

void BM_GowersNormPow(benchmark::State& state) {
  const auto f = ramp(static_cast<int>(state.range(0)));
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(gowers_norm_pow(f, k));
}
BENCHMARK(BM_GowersNormPow)->Args({8, 2})->Args({8, 3})->Args({16, 3})->Args({6, 4});

void BM_GowersNormRecursive(benchmark::State& state) {
  const auto f = ramp(static_cast<int>(state.range(0)));
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(gowers_norm_recursive(f, k));
}
BENCHMARK(BM_GowersNormRecursive)->Args({8, 2})->Args({8, 3})->Args({16, 3})->Args({6, 4});

void BM_EnergyP(benchmark::State& state) {
  const auto set = CubeSet::full(static_cast<std::size_t>(state.range(0)), 2);
  const auto k = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(energy_P(set, k));
}
BENCHMARK(BM_EnergyP)->Args({1, 6})->Args({2, 4})->Args({3, 3});

void BM_ObjectiveValue(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Objective objective(n, 4);
  const auto g = binomial_witness(n);
  for (auto _ : state) benchmark::DoNotOptimize(objective.value(3.5, g));
}
BENCHMARK(BM_ObjectiveValue)->DenseRange(3, 7, 2);

void BM_MaxObjective(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Objective objective(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(max_objective(objective, 2.75).value);
}
BENCHMARK(BM_MaxObjective)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
