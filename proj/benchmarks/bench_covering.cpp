#include "qlab/covering.hpp"

#include <benchmark/benchmark.h>

using namespace qlab;

namespace {

void BM_P1Square(benchmark::State& state) {
  CoverOptions o{Scalar(1, state.range(0))};
  Body k = Body::cube(2, Scalar(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(check_p1(k, LatticeSpec::integer(2), o));
}

void BM_P1Parallelogram(benchmark::State& state) {
  CoverOptions o{Scalar(1, state.range(0))};
  Body k = parallelogram_body();
  for (auto _ : state) benchmark::DoNotOptimize(check_p1(k, LatticeSpec::integer(2), o));
}

void BM_P1Cube3(benchmark::State& state) {
  CoverOptions o{Scalar(1, state.range(0))};
  Body k = Body::cube(3, Scalar(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(check_p1(k, LatticeSpec::integer(3), o));
}

void BM_Gauge(benchmark::State& state) {
  Body k = parallelogram_body();
  Point p{Scalar(3, 7), Scalar(-2, 9)};
  for (auto _ : state) benchmark::DoNotOptimize(k.gauge(p));
}

} // namespace

BENCHMARK(BM_P1Square)->Arg(16)->Arg(64);
BENCHMARK(BM_P1Parallelogram)->Arg(16)->Arg(64);
BENCHMARK(BM_P1Cube3)->Arg(4)->Arg(8);
BENCHMARK(BM_Gauge);

BENCHMARK_MAIN();
