#include <doctest.h>

#include <cmath>

#include "induced/geometry.hpp"
#include "induced/linprog.hpp"
#include "induced/polytope.hpp"
#include "test_helpers.hpp"

using namespace induced;

TEST_SUITE_BEGIN("polytope");

TEST_CASE("solve_lp basics") {
  // min x + y  s.t.  x + 2y = 4
  const LpResult r = solve_lp({{1, 2}}, {4}, {1, 1});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(2.0));

  // Infeasible: x + y = -1 with x, y >= 0.
  CHECK(solve_lp({{1, 1}}, {-1}, {1, 1}).status == LpStatus::Infeasible);

  // Redundant rows stay consistent.
  const LpResult q = solve_lp({{1, 1}, {2, 2}}, {3, 6}, {2, 1});
  REQUIRE(q.status == LpStatus::Optimal);
  CHECK(q.objective == doctest::Approx(3.0));
}

TEST_CASE("square polygon and the m-gon size rule") {
  // cos(pi/4) >= 1/(1+eps) for eps >= sqrt(2)-1: the square is valid.
  const ApproxPolytope sq = build_polytope(2, 0.5);
  CHECK(sq.vertices.size() == 4);
  for (const auto& f : sq.facets) CHECK(f.offset == doctest::Approx(std::sqrt(0.5)));

  // eps = 0.1 needs the regular 8-gon: cos(pi/8) ~ 0.9239 >= 1/1.1.
  const ApproxPolytope oct = build_polytope(2, 0.1);
  CHECK(oct.vertices.size() == 8);
  for (const auto& f : oct.facets) CHECK(f.offset >= 1.0 / 1.1 - 1e-12);

  CHECK_THROWS_AS(build_polytope(2, 0.0), InvalidEpsilon);
  CHECK_THROWS_AS(build_polytope(2, 1.5), InvalidEpsilon);
  CHECK_THROWS_AS(build_polytope(9, 0.5), UnsupportedDim);
  CHECK_THROWS_AS(build_polytope(1, 0.5), UnsupportedDim);
}

TEST_CASE("gauge of the square is the L1 norm") {
  const ApproxPolytope sq = build_polytope(2, 0.5);
  CHECK(sq.gauge(Vec{0, 0}, Vec{1, 1}) == doctest::Approx(2.0));
  CHECK(sq.gauge(Vec{0, 0}, Vec{0, 0}) == doctest::Approx(0.0));
  CHECK(sq.gauge(Vec{1, 1}, Vec{1.5, 1}) == doctest::Approx(0.5));
}

TEST_CASE("certificates and sandwich bounds across dimensions") {
  SplitRng rng(61);
  for (const auto& [d, eps] : std::vector<std::pair<int, double>>{
           {2, 0.1}, {2, 0.5}, {3, 0.1}, {3, 0.5}, {4, 0.25}, {5, 0.5}}) {
    const ApproxPolytope Q = build_polytope(d, eps);
    double minOffset = 2.0;
    for (const auto& f : Q.facets) minOffset = std::min(minOffset, f.offset);
    CHECK(minOffset >= 1.0 / (1.0 + eps) - 1e-12);
    for (const Vec& v : Q.vertices) CHECK(norm2(v) <= 1.0 + 1e-12);
    const double bound =
        ApproxPolytope::vertexBoundConstant(d) * std::pow(eps, -(d - 1) / 2.0);
    CHECK(static_cast<double>(Q.vertices.size()) <= bound);

    const Vec zero(d, 0.0);
    for (int trial = 0; trial < 10000; ++trial) {
      const Vec u = testutil::random_unit(d, rng);
      const double g = Q.gauge(zero, u);
      CHECK(g >= 1.0 - 1e-9);
      CHECK(g <= 1.0 + eps + 1e-9);
    }
  }
}

TEST_CASE("gauge is translation invariant and positively homogeneous") {
  SplitRng rng(67);
  const ApproxPolytope Q = build_polytope(3, 0.25);
  for (int trial = 0; trial < 2000; ++trial) {
    const Vec y = testutil::random_vec(3, rng, -2, 2);
    const Vec v = testutil::random_vec(3, rng, -2, 2);
    const Vec t = testutil::random_vec(3, rng, -2, 2);
    const double g = Q.gauge(y, v);
    CHECK(Q.gauge(add(y, t), add(v, t)) == doctest::Approx(g).epsilon(1e-8));
    const double c = rng.nextDouble(0, 3);
    Vec scaledTarget = y;
    axpy(scaledTarget, c, sub(v, y));
    CHECK(Q.gauge(y, scaledTarget) == doctest::Approx(c * g).epsilon(1e-8));
  }
}

TEST_CASE("facet-restricted shooting reproduces the gauge at the minimizing facet") {
  SplitRng rng(71);
  const ApproxPolytope Q = build_polytope(3, 0.25);
  const Vec zero(3, 0.0);
  const auto& facets = Q.faces(2);
  for (int trial = 0; trial < 10000; ++trial) {
    const Vec u = testutil::random_unit(3, rng);
    const double t = rng.nextDouble(0.5, 2.0);
    const Vec target = scaled(u, t);
    const double g = Q.gauge(zero, target);

    // The arg-max facet of the gauge formula supports the contact point.
    std::size_t argmax = 0;
    double bestVal = -1.0;
    for (std::size_t f = 0; f < Q.facets.size(); ++f) {
      const double val = dot(Q.facets[f].normal, target) / Q.facets[f].offset;
      if (val > bestVal) {
        bestVal = val;
        argmax = f;
      }
    }
    AffineFlat pointTarget;
    pointTarget.base = target;
    const auto hit =
        lambda_of_target(zero, Q.faceDirections(Q.facets[argmax].vertexIds), pointTarget, 1e-9);
    REQUIRE(hit.has_value());
    CHECK(hit->lambda == doctest::Approx(g).epsilon(1e-8));
  }
  // On a subsample, no facet beats the gauge.
  for (int trial = 0; trial < 100; ++trial) {
    const Vec u = testutil::random_unit(3, rng);
    const Vec target = scaled(u, 1.3);
    const double g = Q.gauge(zero, target);
    double best = -1.0;
    for (const auto& face : facets) {
      AffineFlat pointTarget;
      pointTarget.base = target;
      const auto hit = lambda_of_target(zero, Q.faceDirections(face), pointTarget, 1e-9);
      if (hit && (best < 0.0 || hit->lambda < best)) best = hit->lambda;
    }
    CHECK(best == doctest::Approx(g).epsilon(1e-8));
  }
}

TEST_CASE("the shooting simplex is monotone in lambda") {
  SplitRng rng(73);
  const ApproxPolytope Q = build_polytope(3, 0.25);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& edges = Q.faces(1);
    const auto& face = edges[rng.nextBelow(edges.size())];
    QuerySimplex small{testutil::random_vec(3, rng), Q.faceDirections(face), 0.4};
    QuerySimplex large{small.apex, small.faceDirs, 0.9};
    for (const Vec& v : small.vertexList())
      CHECK(dist_point_to_simplex_of(v, large.vertexList(), 1e-9).distance < 1e-9);
  }
}

TEST_CASE("lambda_of_target on the axis-plane examples") {
  const std::vector<Vec> e{{1, 0, 0}, {0, 1, 0}};
  const Vec y{0, 0, 0};

  // Line through (2,0,0) and (0,2,0): first contact at lambda = 2.
  const PointSet line1 = testutil::pts(3, {{2, 0, 0}, {0, 2, 0}});
  const AffineFlat f1 = affine_hull(line1, {{0, 1}, SubsetKind::Affine}, 1e-9);
  const auto hit1 = lambda_of_target(y, e, f1, 1e-9);
  REQUIRE(hit1.has_value());
  CHECK(hit1->lambda == doctest::Approx(2.0));

  // The vertical line at (5,5): inside the cone's closure (z = 0 plane),
  // reached at lambda = 10.
  const PointSet line2 = testutil::pts(3, {{5, 5, 0}, {5, 5, 1}});
  const auto hit2 =
      lambda_of_target(y, e, affine_hull(line2, {{0, 1}, SubsetKind::Affine}, 1e-9), 1e-9);
  REQUIRE(hit2.has_value());
  CHECK(hit2->lambda == doctest::Approx(10.0));

  // The vertical line at (5,-5) misses the nonnegative cone entirely.
  const PointSet line3 = testutil::pts(3, {{5, -5, 0}, {5, -5, 1}});
  CHECK_FALSE(
      lambda_of_target(y, e, affine_hull(line3, {{0, 1}, SubsetKind::Affine}, 1e-9), 1e-9)
          .has_value());
}

TEST_CASE("lambda_of_target hit point lies on the target within tolerance") {
  SplitRng rng(79);
  const ApproxPolytope Q = build_polytope(3, 0.25);
  int hits = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto& edges = Q.faces(1);
    const auto& face = edges[rng.nextBelow(edges.size())];
    const Vec y = testutil::random_vec(3, rng);
    const PointSet linePts = testutil::random_points(2, 3, rng, -1, 2);
    const AffineFlat target = affine_hull(linePts, {{0, 1}, SubsetKind::Affine}, 1e-9);
    const auto hit = lambda_of_target(y, Q.faceDirections(face), target, 1e-9);
    if (!hit) continue;
    ++hits;
    CHECK(dist_point_to_flat(hit->point, target).distance < 1e-7);
    // The hit point is inside the simplex at its own lambda.
    QuerySimplex delta{y, Q.faceDirections(face), hit->lambda + 1e-9};
    CHECK(dist_point_to_simplex_of(hit->point, delta.vertexList(), 1e-9).distance < 1e-7);
  }
  CHECK(hits > 20);  // the cone over an edge hits a fair share of random lines
}

TEST_SUITE_END();
