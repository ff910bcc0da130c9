#include <benchmark/benchmark.h>

#include "povmkit/complex_matrix.hpp"
#include "povmkit/random.hpp"

using namespace povmkit;

namespace {

HermitianMatrix random_hermitian(int dim, uint64_t seed) {
  Rng rng(seed);
  CMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return HermitianMatrix(0.5 * (m + m.adjoint()), 1e-6);
}

void BM_EigHermitian(benchmark::State& state) {
  const HermitianMatrix m = random_hermitian(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(m));
}

void BM_TraceNorm(benchmark::State& state) {
  const HermitianMatrix m = random_hermitian(static_cast<int>(state.range(0)), 9);
  for (auto _ : state) benchmark::DoNotOptimize(trace_norm(m));
}

}  // namespace

BENCHMARK(BM_EigHermitian)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_TraceNorm)->Arg(4)->Arg(16)->Arg(64);
