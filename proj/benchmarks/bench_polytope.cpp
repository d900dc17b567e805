#include <benchmark/benchmark.h>

#include "induced/polytope.hpp"
#include "induced/rng.hpp"

using namespace induced;

namespace {

void BM_BuildPolytope(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const double eps = static_cast<double>(state.range(1)) / 100.0;
  for (auto _ : state) {
    const ApproxPolytope Q = build_polytope(d, eps);
    benchmark::DoNotOptimize(Q.vertices.size());
  }
}

void BM_Gauge(benchmark::State& state) {
  const ApproxPolytope Q = build_polytope(3, 0.1);
  SplitRng rng(7);
  Vec y(3), v(3);
  for (auto _ : state) {
    for (double& x : y) x = rng.nextDouble();
    for (double& x : v) x = rng.nextDouble();
    benchmark::DoNotOptimize(Q.gauge(y, v));
  }
}

}  // namespace

BENCHMARK(BM_BuildPolytope)->Args({2, 5})->Args({3, 10})->Args({3, 5})->Args({4, 10});
BENCHMARK(BM_Gauge);
