#include <benchmark/benchmark.h>

#include "induced/range_counter.hpp"
#include "induced/rng.hpp"

using namespace induced;

namespace {

std::vector<std::vector<int>> random_ranks(int m, int g, SplitRng& rng) {
  std::vector<std::vector<int>> ranks(m, std::vector<int>(g));
  for (int a = 0; a < g; ++a) {
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    for (int i = m - 1; i > 0; --i) std::swap(perm[i], perm[rng.nextBelow(i + 1)]);
    for (int i = 0; i < m; ++i) ranks[i][a] = perm[i];
  }
  return ranks;
}

void BM_RangeCounterBuild(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int g = static_cast<int>(state.range(1));
  SplitRng rng(42);
  const auto ranks = random_ranks(m, g, rng);
  for (auto _ : state) {
    RangeCounter rc(ranks, m);
    benchmark::DoNotOptimize(rc.size());
  }
}

void BM_RangeCounterQuery(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int g = static_cast<int>(state.range(1));
  SplitRng rng(43);
  const RangeCounter rc(random_ranks(m, g, rng), m);
  std::vector<std::pair<int, int>> rect(g);
  for (auto _ : state) {
    for (int a = 0; a < g; ++a) {
      const int lo = static_cast<int>(rng.nextBelow(2 * m));
      rect[a] = {lo, std::min<int>(lo + static_cast<int>(rng.nextBelow(m)), 2 * m)};
    }
    benchmark::DoNotOptimize(rc.countHalfOpen(rect));
  }
}

}  // namespace

BENCHMARK(BM_RangeCounterBuild)->Args({1000, 2})->Args({1000, 3})->Args({8000, 3});
BENCHMARK(BM_RangeCounterQuery)->Args({1000, 3})->Args({8000, 3})->Args({2000, 5});
