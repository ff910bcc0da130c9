#include <benchmark/benchmark.h>

#include "povmkit/fuzzy_order.hpp"
#include "povmkit/generators.hpp"

using namespace povmkit;

namespace {

void BM_Preceq(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int rows = static_cast<int>(state.range(1));
  const DiscretePovm a = random_povm(dim, 3, 21);
  const DiscretePovm b = split_povm(a, rows, 22);
  for (auto _ : state) benchmark::DoNotOptimize(preceq(a, b));
}

void BM_EquivalentLp(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const DiscretePovm a = random_povm(dim, 3, 31);
  const DiscretePovm b = split_povm(a, 3, 32);
  for (auto _ : state) benchmark::DoNotOptimize(equivalent(a, b, EquivMethod::lp));
}

void BM_EquivalentReduce(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const DiscretePovm a = random_povm(dim, 3, 31);
  const DiscretePovm b = split_povm(a, 3, 32);
  for (auto _ : state) benchmark::DoNotOptimize(equivalent(a, b, EquivMethod::reduce));
}

}  // namespace

BENCHMARK(BM_Preceq)->Args({2, 2})->Args({2, 5})->Args({3, 3})->Args({4, 2});
BENCHMARK(BM_EquivalentLp)->Arg(2)->Arg(3);
BENCHMARK(BM_EquivalentReduce)->Arg(2)->Arg(3)->Arg(4);
