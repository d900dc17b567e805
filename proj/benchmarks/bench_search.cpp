#include <benchmark/benchmark.h>

#include "induced/flat_search.hpp"
#include "induced/generators.hpp"
#include "induced/simplex_search.hpp"

using namespace induced;

namespace {

void BM_NearestFlat(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const Instance inst = generate_instance(Generator::UniformCube, n, 3, 1234);
  SearchOptions opts;
  opts.policy.seed = 99;
  opts.cachePrefixCounts = k > 2;
  for (auto _ : state) {
    const auto r =
        nearest_flat_approx(inst.points, *inst.query, k, 0.25, FlatVariant::Affine, opts);
    benchmark::DoNotOptimize(r.euclid);
  }
}

void BM_NearestSimplex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(Generator::UniformCube, n, 3, 4321);
  SearchOptions opts;
  opts.policy.seed = 7;
  for (auto _ : state) {
    const auto r = nearest_simplex_approx(inst.points, *inst.query, 2, 0.25, opts);
    benchmark::DoNotOptimize(r.euclid);
  }
}

void BM_CountIntersecting(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = generate_instance(Generator::UniformCube, n, 3, 555);
  const ApproxPolytope Q = build_polytope(3, 0.25);
  QuerySimplex delta;
  delta.apex = *inst.query;
  delta.faceDirs = Q.faceDirections(Q.faces(1)[0]);
  delta.lambda = 0.8;
  SearchOptions opts;
  for (auto _ : state) {
    const auto c = count_intersecting(inst.points, 2, delta, FlatVariant::Affine, opts);
    benchmark::DoNotOptimize(c.totalOrdered);
  }
}

}  // namespace

BENCHMARK(BM_CountIntersecting)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearestFlat)->Args({1000, 2})->Args({4000, 2})->Args({200, 3})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearestSimplex)->Arg(500)->Unit(benchmark::kMillisecond);
