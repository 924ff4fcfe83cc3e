#include "qlab/oracle.hpp"
#include "qlab/quantize.hpp"

#include <benchmark/benchmark.h>

using namespace qlab;

namespace {

Coeffs thirds(std::size_t n) {
  Coeffs x;
  for (Index i = 0; i < n; ++i) x.set(i, Scalar(static_cast<long>(i % 5) - 2, 3));
  return x;
}

void BM_BestSumming(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  SectionProblem p = full_section(BasisSpace::summing(n), NetFamily(Net::lattice(Scalar(1, 2))));
  Coeffs x = thirds(n);
  std::uint64_t nodes = 0;
  for (auto _ : state) nodes = best_quantization(p, x).nodes;
  state.counters["nodes"] = static_cast<double>(nodes);
}

void BM_BestSummingNoPruning(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  SectionProblem p = full_section(BasisSpace::summing(n), NetFamily(Net::lattice(Scalar(1, 2))));
  Coeffs x = thirds(n);
  for (auto _ : state) benchmark::DoNotOptimize(best_quantization(p, x, SearchOptions{default_search_budget(), false}));
}

void BM_GreedySumming(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Coeffs x = thirds(n);
  NetFamily nets(Net::lattice(Scalar(1, 2)));
  for (auto _ : state) benchmark::DoNotOptimize(quantize_summing(x, nets));
}

void BM_HaarWitness(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(haar_witness_distance(static_cast<std::size_t>(state.range(0)), Scalar(1)));
}

} // namespace

BENCHMARK(BM_BestSumming)->DenseRange(2, 6, 1);
BENCHMARK(BM_BestSummingNoPruning)->DenseRange(2, 4, 1);
BENCHMARK(BM_GreedySumming)->RangeMultiplier(4)->Range(8, 512);
BENCHMARK(BM_HaarWitness)->DenseRange(1, 3, 1);

BENCHMARK_MAIN();
