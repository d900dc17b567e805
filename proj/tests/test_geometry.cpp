#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "induced/geometry.hpp"
#include "induced/rng.hpp"
#include "test_helpers.hpp"

using namespace induced;
using testutil::pts;

namespace {
constexpr double kTol = 1e-9;
}

TEST_SUITE_BEGIN("geometry");

TEST_CASE("side_of_hyperplane classifies the basic cases") {
  const Vec h3{0, 0, 1, 0};  // x3 = 0 in R^3
  CHECK(side_of_hyperplane(h3, Vec{1, 2, 5}, kTol) == Side::Above);
  CHECK(side_of_hyperplane(h3, Vec{1, 2, 0}, kTol) == Side::On);
  const Vec h2{1, 1, -1};  // x + y - 1 = 0 in R^2
  CHECK(side_of_hyperplane(h2, Vec{0, 0}, kTol) == Side::Below);
  CHECK_THROWS_AS(side_of_hyperplane(Vec{0, 0, 3}, Vec{1, 1}, kTol), ZeroNormal);
}

TEST_CASE("side_of_hyperplane flips when the coefficients are negated") {
  SplitRng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + static_cast<int>(rng.nextBelow(5));
    Vec h(d + 1), p(d);
    for (double& x : h) x = rng.nextDouble(-1, 1);
    for (double& x : p) x = rng.nextDouble(-1, 1);
    if (norm2({h.begin(), h.begin() + d}) == 0.0) continue;
    const Side s = side_of_hyperplane(h, p, kTol);
    Vec neg = h;
    for (double& x : neg) x = -x;
    const Side t = side_of_hyperplane(neg, p, kTol);
    CHECK(static_cast<int>(s) == -static_cast<int>(t));
  }
}

TEST_CASE("affine_hull orthonormalizes and rejects dependent input") {
  const PointSet a = pts(3, {{0, 0, 0}, {1, 0, 0}});
  const AffineFlat f = affine_hull(a, {{0, 1}, SubsetKind::Affine}, kTol);
  CHECK(f.base == Vec{0, 0, 0});
  REQUIRE(f.basis.size() == 1);
  CHECK(f.basis[0][0] == doctest::Approx(1.0));

  const PointSet collinear = pts(2, {{0, 0}, {1, 0}, {2, 0}});
  CHECK_THROWS_AS(affine_hull(collinear, {{0, 1, 2}, SubsetKind::Affine}, kTol),
                  DegenerateInput);

  const PointSet tri = pts(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const AffineFlat plane = affine_hull(tri, {{0, 1, 2}, SubsetKind::Affine}, kTol);
  CHECK(plane.flatDim() == 2);
  // x + y + z = 1: the basis must be orthogonal to (1,1,1).
  for (const Vec& b : plane.basis)
    CHECK(std::abs(b[0] + b[1] + b[2]) < 1e-12);
}

TEST_CASE("affine_hull basis Gram matrix is the identity") {
  SplitRng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng.nextBelow(5));
    const int k = 2 + static_cast<int>(rng.nextBelow(d));
    const PointSet S = testutil::random_points(k, d, rng);
    std::vector<int> ids(k);
    for (int i = 0; i < k; ++i) ids[i] = i;
    const AffineFlat f = affine_hull(S, {ids, SubsetKind::Affine}, kTol);
    for (std::size_t i = 0; i < f.basis.size(); ++i)
      for (std::size_t j = 0; j < f.basis.size(); ++j) {
        const double g = dot(f.basis[i], f.basis[j]);
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 10 * kTol);
      }
  }
}

TEST_CASE("dist_point_to_flat on the worked examples") {
  const PointSet axis = pts(3, {{0, 0, 0}, {1, 0, 0}});
  const AffineFlat f = affine_hull(axis, {{0, 1}, SubsetKind::Affine}, kTol);
  const Projection p = dist_point_to_flat(Vec{0, 0, 1}, f);
  CHECK(p.distance == doctest::Approx(1.0));
  CHECK(p.foot[0] == doctest::Approx(0.0));

  const PointSet diag = pts(3, {{1, 0, 0}, {0, 1, 0}});
  const AffineFlat g = affine_hull(diag, {{0, 1}, SubsetKind::Affine}, kTol);
  const Projection q = dist_point_to_flat(Vec{0, 0, 0}, g);
  CHECK(q.distance == doctest::Approx(std::sqrt(0.5)));
  CHECK(q.foot[0] == doctest::Approx(0.5));
  CHECK(q.foot[1] == doctest::Approx(0.5));
  CHECK(q.foot[2] == doctest::Approx(0.0));

  const Projection onFlat = dist_point_to_flat(Vec{0.25, 0, 0}, f);
  CHECK(onFlat.distance < 1e-12);
}

TEST_CASE("projection is optimal against random flat points") {
  SplitRng rng(37);
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = 2 + static_cast<int>(rng.nextBelow(5));
    const int k = 2 + static_cast<int>(rng.nextBelow(d));
    const PointSet S = testutil::random_points(k, d, rng);
    std::vector<int> ids(k);
    for (int i = 0; i < k; ++i) ids[i] = i;
    const AffineFlat f = affine_hull(S, {ids, SubsetKind::Affine}, kTol);
    const Vec y = testutil::random_vec(d, rng, -1, 2);
    const double dist = dist_point_to_flat(y, f).distance;
    for (int probe = 0; probe < 100; ++probe) {
      Vec p = f.base;
      for (const Vec& b : f.basis) axpy(p, rng.nextDouble(-2, 2), b);
      CHECK(dist <= dist2(y, p) + kTol);
    }
  }
}

TEST_CASE("dist_point_to_simplex clamps to faces") {
  const PointSet seg1 = pts(3, {{1, 0, 0}, {0, 1, 0}});
  CHECK(dist_point_to_simplex(Vec{0, 0, 0}, seg1, {{0, 1}, SubsetKind::Convex}, kTol).distance ==
        doctest::Approx(std::sqrt(0.5)));

  const PointSet seg2 = pts(3, {{1, 0, 0}, {2, 1, 0}});
  const Projection p =
      dist_point_to_simplex(Vec{0, 0, 0}, seg2, {{0, 1}, SubsetKind::Convex}, kTol);
  CHECK(p.distance == doctest::Approx(1.0));
  CHECK(p.foot[0] == doctest::Approx(1.0));
  CHECK(p.foot[1] == doctest::Approx(0.0));

  // Query inside the hull.
  const PointSet tri = pts(2, {{0, 0}, {1, 0}, {0, 1}});
  CHECK(dist_point_to_simplex(Vec{0.2, 0.2}, tri, {{0, 1, 2}, SubsetKind::Convex}, kTol)
            .distance < 1e-12);
}

TEST_CASE("simplex distance dominates flat distance") {
  SplitRng rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = 2 + static_cast<int>(rng.nextBelow(4));
    const int k = 2 + static_cast<int>(rng.nextBelow(d));
    const PointSet S = testutil::random_points(k, d, rng);
    std::vector<int> ids(k);
    for (int i = 0; i < k; ++i) ids[i] = i;
    const IndexSubset sub{ids, SubsetKind::Affine};
    const Vec y = testutil::random_vec(d, rng, -1, 2);
    const double flat = dist_point_to_flat(y, affine_hull(S, sub, kTol)).distance;
    const double simplex = dist_point_to_simplex(y, S, sub, kTol).distance;
    CHECK(simplex >= flat - 1e-9);
  }
}

TEST_CASE("validate_general_position finds planted dependencies") {
  const PointSet collinear = pts(2, {{0, 0}, {1, 1}, {2, 2}});
  const auto report = validate_general_position(collinear, nullptr, 2, {});
  REQUIRE(report.dependent.size() == 1);
  CHECK(report.dependent[0] == std::vector<int>{0, 1, 2});

  SplitRng rng(53);
  const PointSet generic = testutil::random_points(3, 2, rng);
  CHECK(validate_general_position(generic, nullptr, 2, {}).dependent.empty());
}

TEST_CASE("validate_general_position agrees with a determinant scan on a planted 4-tuple") {
  SplitRng rng(59);
  PointSet S = testutil::random_points(7, 3, rng);
  // Rebuild with point 3 inside aff(points 0,1,2): a planted coplanar 4-tuple.
  std::vector<Vec> rows;
  for (int i = 0; i < S.size(); ++i) rows.push_back(S.row(i));
  const double a = 0.3, b = 0.5;
  for (int c = 0; c < 3; ++c)
    rows[3][c] = rows[0][c] + a * (rows[1][c] - rows[0][c]) + b * (rows[2][c] - rows[0][c]);
  S = PointSet::fromRows(3, rows);

  // Independent oracle: exhaustive 3x3 determinant over all 4-subsets.
  std::vector<std::vector<int>> coplanar;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k)
        for (int l = k + 1; l < 7; ++l) {
          const Vec u = sub(S[j], S[i]), v = sub(S[k], S[i]), w = sub(S[l], S[i]);
          const double det = u[0] * (v[1] * w[2] - v[2] * w[1]) -
                             u[1] * (v[0] * w[2] - v[2] * w[0]) +
                             u[2] * (v[0] * w[1] - v[1] * w[0]);
          if (std::abs(det) <= 1e-9 * norm2(u) * norm2(v) * norm2(w))
            coplanar.push_back({i, j, k, l});
        }
  REQUIRE(coplanar.size() == 1);
  CHECK(coplanar[0] == std::vector<int>{0, 1, 2, 3});

  const auto report = validate_general_position(S, nullptr, 3, {});
  // The level-2 scan must flag exactly the planted 4-tuple (no 3-subsets are
  // collinear in this construction).
  REQUIRE(report.dependent.size() == 1);
  CHECK(report.dependent[0] == coplanar[0]);
}

TEST_CASE("perturb is deterministic and repairs degeneracies") {
  const PointSet collinear = pts(2, {{0, 0}, {1, 1}, {2, 2}});
  CHECK(perturb(collinear, 0.0, 7).raw() == collinear.raw());
  const PointSet a = perturb(collinear, 1e-9, 7);
  const PointSet b = perturb(collinear, 1e-9, 7);
  CHECK(a.raw() == b.raw());
  CHECK(a.raw() != collinear.raw());

  NumericPolicy strict;
  strict.tolerance = 1e-12;
  CHECK(validate_general_position(a, nullptr, 2, strict).dependent.empty());
}

TEST_SUITE_END();
