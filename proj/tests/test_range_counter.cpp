#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "induced/geometry.hpp"
#include "induced/range_counter.hpp"
#include "test_helpers.hpp"

using namespace induced;
using testutil::pts;

namespace {

AffineFlat line_flat(Vec base, Vec dir) {
  AffineFlat f;
  f.base = std::move(base);
  normalize_inplace(dir);
  f.basis = {std::move(dir)};
  return f;
}

// Doubled-coordinate membership, the reference semantics for counting.
bool naive_in(int rank, int m, std::pair<int, int> interval) {
  const auto [a, b] = interval;
  return (rank >= a && rank < b) || (rank + m >= a && rank + m < b);
}

std::uint64_t naive_count(const std::vector<std::vector<int>>& ranks, int m,
                          const std::vector<std::pair<int, int>>& rect) {
  std::uint64_t c = 0;
  for (const auto& p : ranks) {
    bool ok = true;
    for (std::size_t a = 0; a < rect.size() && ok; ++a) ok = naive_in(p[a], m, rect[a]);
    c += ok;
  }
  return c;
}

}  // namespace

TEST_SUITE_BEGIN("range-counter");

TEST_CASE("circular ranks around the x-axis") {
  const PointSet S = pts(3, {{0.5, 1, 0}, {0.5, 0, 1}, {0.5, -1, 0}});
  const CircularAxis ax = circular_ranks(S, {}, line_flat({0, 0, 0}, {1, 0, 0}), 1e-9);
  CHECK(ax.rankOf(0) == 0);  // angle 0
  CHECK(ax.rankOf(1) == 1);  // angle pi/2
  CHECK(ax.rankOf(2) == 2);  // angle pi
  CHECK(ax.angleAtRank(0) == doctest::Approx(0.0));
  CHECK(ax.angleAtRank(1) == doctest::Approx(M_PI / 2));
  CHECK(ax.angleAtRank(2) == doctest::Approx(M_PI));
}

TEST_CASE("rotation about the pivot preserves the cyclic order") {
  SplitRng rng(97);
  const int m = 12;
  std::vector<Vec> rows;
  for (int i = 0; i < m; ++i) rows.push_back(testutil::random_vec(3, rng, -1, 1));
  const PointSet S = PointSet::fromRows(3, rows);
  const AffineFlat pivot = line_flat({0, 0, 0}, {0, 0, 1});
  const CircularAxis before = circular_ranks(S, {}, pivot, 1e-9);

  const double phi = 1.234;
  std::vector<Vec> rot;
  for (const Vec& p : rows)
    rot.push_back({p[0] * std::cos(phi) - p[1] * std::sin(phi),
                   p[0] * std::sin(phi) + p[1] * std::cos(phi), p[2]});
  const CircularAxis after = circular_ranks(PointSet::fromRows(3, rot), {}, pivot, 1e-9);

  // Ranks shift by a constant offset around the circle.
  const int shift = (after.rankOf(before.liveIds()[0]) - 0 + m) % m;
  for (int r = 0; r < m; ++r) {
    const int id = before.liveIds()[r];
    CHECK(after.rankOf(id) == (r + shift) % m);
  }
}

TEST_CASE("cyclic order matches the determinant comparator") {
  SplitRng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 3 + static_cast<int>(rng.nextBelow(15));
    const Vec base = testutil::random_vec(3, rng, -0.5, 0.5);
    const Vec dir = testutil::random_unit(3, rng);
    std::vector<Vec> rows;
    for (int i = 0; i < m; ++i) rows.push_back(testutil::random_vec(3, rng, -2, 2));
    const PointSet S = PointSet::fromRows(3, rows);
    const AffineFlat pivot = line_flat(base, dir);
    const CircularAxis ax = circular_ranks(S, {}, pivot, 1e-9);

    // det[dir, p-b, q-b] > 0 iff q sits in the open half-circle after p, up
    // to one global orientation of the complement-plane basis.
    auto det3 = [&](const Vec& p, const Vec& q) {
      const Vec u = sub(p, base), v = sub(q, base);
      return dir[0] * (u[1] * v[2] - u[2] * v[1]) - dir[1] * (u[0] * v[2] - u[2] * v[0]) +
             dir[2] * (u[0] * v[1] - u[1] * v[0]);
    };
    int orientation = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        const int ri = ax.rankOf(i), rj = ax.rankOf(j);
        const int rjU = rj > ri ? rj : rj + m;
        const bool afterHalf = rjU > ri && rjU < ax.antipodeOf(ri);
        const double det = det3(S.row(i), S.row(j));
        REQUIRE(std::abs(det) > 1e-12);
        const int sign = (det > 0) == afterHalf ? 1 : -1;
        if (orientation == 0)
          orientation = sign;
        else
          CHECK(orientation == sign);
      }
    }
  }
}

TEST_CASE("angle ties raise DegenerateInput") {
  // Two points coplanar with the pivot (same angle mod pi).
  const PointSet S = pts(3, {{0.1, 1, 0}, {0.9, 2, 0}, {0.5, 0, 1}});
  CHECK_THROWS_AS(circular_ranks(S, {}, line_flat({0, 0, 0}, {1, 0, 0}), 1e-9),
                  DegenerateInput);
  // A point on the pivot flat itself.
  const PointSet T = pts(3, {{0.3, 0, 0}, {0.5, 0, 1}, {0.5, 1, 0}});
  CHECK_THROWS_AS(circular_ranks(T, {}, line_flat({0, 0, 0}, {1, 0, 0}), 1e-9),
                  DegenerateInput);
}

TEST_CASE("counter handles the worked rectangle examples") {
  const RangeCounter rc({{1, 1}, {2, 3}, {3, 2}}, 5);
  CHECK(rc.count({{1, 2, false, false}, {1, 3, false, false}}) == 2);
  // Full range per axis.
  CHECK(rc.count({{0, 4, false, false}, {0, 4, false, false}}) == 3);
  // Wraparound arc (2,1) open-open covers coords {3,4,0}: one point here.
  CHECK(rc.count({{2, 1, true, true}, {0, 4, false, false}}) == 1);
  // Empty interval on one axis.
  CHECK(rc.countHalfOpen({{2, 2}, {0, 5}}) == 0);

  const RangeCounter empty(std::vector<std::vector<int>>{}, 0);
  CHECK(empty.countHalfOpen({}) == 0);

  CHECK_THROWS_AS(rc.count({{0, 12, false, false}, {0, 4, false, false}}), InvalidRectangle);
  CHECK_THROWS_AS(rc.countHalfOpen({{0, 9}, {0, 5}}), InvalidRectangle);
}

TEST_CASE("counter equals the naive scan on random rank sets") {
  SplitRng rng(103);
  for (int set = 0; set < 12; ++set) {
    const int g = 1 + static_cast<int>(rng.nextBelow(4));
    const int m = 2 + static_cast<int>(rng.nextBelow(299));
    // Random permutation ranks per axis.
    std::vector<std::vector<int>> perms(g);
    for (int a = 0; a < g; ++a) {
      perms[a].resize(m);
      for (int i = 0; i < m; ++i) perms[a][i] = i;
      for (int i = m - 1; i > 0; --i)
        std::swap(perms[a][i], perms[a][rng.nextBelow(i + 1)]);
    }
    std::vector<std::vector<int>> ranks(m, std::vector<int>(g));
    for (int i = 0; i < m; ++i)
      for (int a = 0; a < g; ++a) ranks[i][a] = perms[a][i];
    const RangeCounter rc(ranks, m);

    for (int q = 0; q < 1000; ++q) {
      std::vector<std::pair<int, int>> rect(g);
      for (int a = 0; a < g; ++a) {
        const int lo = static_cast<int>(rng.nextBelow(2 * m));
        const int len = static_cast<int>(rng.nextBelow(m + 1));
        rect[a] = {lo, std::min(lo + len, 2 * m)};
      }
      CHECK(rc.countHalfOpen(rect) == naive_count(ranks, m, rect));
    }
  }
}

TEST_CASE("doubling consistency, additivity and wraparound complement") {
  SplitRng rng(107);
  const int m = 64;
  std::vector<std::vector<int>> ranks(m, std::vector<int>(2));
  std::vector<int> p0(m), p1(m);
  for (int i = 0; i < m; ++i) p0[i] = p1[i] = i;
  for (int i = m - 1; i > 0; --i) std::swap(p1[i], p1[rng.nextBelow(i + 1)]);
  for (int i = 0; i < m; ++i) ranks[i] = {p0[i], p1[i]};
  const RangeCounter rc(ranks, m);

  for (int trial = 0; trial < 200; ++trial) {
    const int a = static_cast<int>(rng.nextBelow(m));
    const int len = static_cast<int>(rng.nextBelow(m + 1));
    // Any arc plus its complement covers every point exactly once.
    const std::uint64_t arc = rc.countHalfOpen({{a, a + len}, {0, m}});
    const std::uint64_t rest = rc.countHalfOpen({{a + len, a + m}, {0, m}});
    CHECK(arc + rest == static_cast<std::uint64_t>(m));
    // Additivity of disjoint halves.
    const int mid = a + len / 2;
    const std::uint64_t whole = rc.countHalfOpen({{0, m}, {a, a + len}});
    const std::uint64_t left = rc.countHalfOpen({{0, m}, {a, mid}});
    const std::uint64_t right = rc.countHalfOpen({{0, m}, {mid, a + len}});
    CHECK(whole == left + right);
  }
  // Doubling consistency in the strict sense: [a,b) vs [a+m, b+m).
  for (int a = 0; a < m; ++a) {
    const int b = a + 17 <= m ? a + 17 : m;
    CHECK(rc.countHalfOpen({{a, b}, {0, m}}) == rc.countHalfOpen({{a + m, b + m}, {0, m}}));
  }
}

TEST_CASE("RankedPointSet assembles rank vectors from axes") {
  const PointSet S = pts(3, {{0.5, 1, 0.1}, {0.5, -0.2, 1}, {0.5, -1, 0.15}, {0.4, 0.6, -0.8}});
  const AffineFlat pivot = line_flat({0, 0, 0}, {1, 0, 0});
  const AffineFlat pivot2 = line_flat({0, 0.1, 0.05}, {0.8, 0.6, 0});
  const RankedPointSet rp =
      RankedPointSet::assemble({circular_ranks(S, {}, pivot, 1e-9),
                                circular_ranks(S, {}, pivot2, 1e-9)});
  CHECK(rp.liveIds.size() == 4);
  const RangeCounter rc = RangeCounter::build(rp);
  CHECK(rc.size() == 4);
  CHECK(rc.countHalfOpen({{0, 4}, {0, 4}}) == 4);
}

TEST_SUITE_END();
