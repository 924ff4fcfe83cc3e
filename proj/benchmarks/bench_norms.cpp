#include "qlab/norms.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace qlab;

namespace {

Coeffs random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Coeffs x;
  for (Index i = 0; i < n; ++i) x.set(i, Scalar(static_cast<long>(rng() % 33) - 16, 8));
  return x;
}

void run(benchmark::State& state, const BasisSpace& space) {
  Coeffs x = random_vector(space.dimension(), 7);
  for (auto _ : state) benchmark::DoNotOptimize(norm(space, x));
  state.SetComplexityN(static_cast<long>(space.dimension()));
}

void BM_Summing(benchmark::State& s) { run(s, BasisSpace::summing(static_cast<std::size_t>(s.range(0)))); }
void BM_Schauder(benchmark::State& s) { run(s, BasisSpace::schauder(static_cast<std::size_t>(s.range(0)) - 1)); }
void BM_Haar(benchmark::State& s) { run(s, BasisSpace::haar(static_cast<std::size_t>(s.range(0)))); }
void BM_DirectSumY(benchmark::State& s) {
  std::size_t m = static_cast<std::size_t>(s.range(0));
  run(s, BasisSpace::direct_sum_y(BasisSpace::c0(m), m));
}

} // namespace

BENCHMARK(BM_Summing)->RangeMultiplier(4)->Range(8, 512)->Complexity();
BENCHMARK(BM_Schauder)->RangeMultiplier(4)->Range(8, 512)->Complexity();
BENCHMARK(BM_Haar)->DenseRange(2, 8, 2);
BENCHMARK(BM_DirectSumY)->DenseRange(2, 8, 2);

BENCHMARK_MAIN();
