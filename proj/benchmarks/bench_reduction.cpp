#include <benchmark/benchmark.h>

#include "povmkit/generators.hpp"
#include "povmkit/reduction.hpp"

using namespace povmkit;

namespace {

void BM_Reduce(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int rows = static_cast<int>(state.range(1));
  const DiscretePovm b = split_povm(random_povm(dim, 4, 11), rows, 12);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(b));
}

void BM_ReduceViaLsb(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const DiscretePovm b = split_povm(random_povm(dim, 4, 11), 4, 12);
  const StateEnsemble e = tomographic_ensemble(dim);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_via_lsb(b, e));
}

}  // namespace

BENCHMARK(BM_Reduce)->Args({2, 3})->Args({2, 7})->Args({3, 5})->Args({4, 3});
BENCHMARK(BM_ReduceViaLsb)->Arg(2)->Arg(3)->Arg(4);
