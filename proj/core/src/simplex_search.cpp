#include "induced/simplex_search.hpp"

#include <algorithm>

#include "induced/geometry.hpp"
#include "search_engine.hpp"

namespace induced {

using detail::CountEngine;
using detail::CountMode;

namespace {

void check_level(const PointSet& S, int k) {
  if (k < 2 || k > S.dim()) throw DimensionMismatch("nearest simplex: k must lie in [2, d]");
  if (S.size() < k) throw DimensionMismatch("nearest simplex: not enough points");
}

detail::EngineSetup make_setup(const PointSet& S, int k, const QuerySimplex& delta, double tol) {
  detail::EngineSetup setup;
  setup.S = &S;
  setup.k = k;
  setup.delta = delta;
  setup.mode = CountMode::Convex;
  setup.tol = tol;
  return setup;
}

}  // namespace

bool intersects_convex(const PointSet& S, const IndexSubset& A, const QuerySimplex& delta,
                       double tol) {
  std::vector<Vec> pts;
  pts.reserve(A.indices.size());
  for (int id : A.indices) pts.push_back(S.row(id));
  const Vec ak = pts.back();
  pts.pop_back();
  const std::vector<Vec> B = delta.vertexList();

  // Vertex-side conditions (as in the affine case, intersection only).
  for (std::size_t i = 0; i < B.size(); ++i) {
    std::vector<Vec> hPts = pts;
    for (std::size_t j = 0; j < B.size(); ++j)
      if (j != i) hPts.push_back(B[j]);
    const Vec h = hyperplane_through(hPts, tol);
    const Side ref = side_of_hyperplane(h, B[i], tol);
    if (ref == Side::On)
      throw DegenerateInput("intersects_convex: simplex vertex on its opposite hyperplane");
    const Side s = side_of_hyperplane(h, ak, tol);
    if (s != ref) return false;
  }
  // Prefix-exclusion conditions: a_k on the far side of every hyperplane
  // spanned by the simplex and the other prefix points.
  for (std::size_t j = 0; j < pts.size(); ++j) {
    std::vector<Vec> gPts = B;
    for (std::size_t l = 0; l < pts.size(); ++l)
      if (l != j) gPts.push_back(pts[l]);
    const Vec g = hyperplane_through(gPts, tol);
    const Side ref = side_of_hyperplane(g, pts[j], tol);
    if (ref == Side::On)
      throw DegenerateInput("intersects_convex: subset point on its exclusion hyperplane");
    const Side s = side_of_hyperplane(g, ak, tol);
    if (s == Side::On || s == ref) return false;
  }
  return true;
}

CountResult count_intersecting_convex(const PointSet& S, int k, const QuerySimplex& delta,
                                      const SearchOptions& opts) {
  check_level(S, k);
  CountEngine eng(make_setup(S, k, delta, opts.policy.tolerance), opts);
  return eng.total();
}

IndexSubset sample_intersecting_convex(const PointSet& S, int k, const QuerySimplex& delta,
                                       SplitRng& rng, const SearchOptions& opts) {
  check_level(S, k);
  CountEngine eng(make_setup(S, k, delta, opts.policy.tolerance), opts);
  const CountResult total = eng.total();
  if (total.totalOrdered == 0) throw EmptyRange("sample_intersecting_convex: nothing intersects");
  return eng.sampleOrdinal(rng.nextBelow(total.totalOrdered));
}

NearestSimplexResult nearest_simplex_approx(const PointSet& S, std::span<const double> y, int k,
                                            double epsilon, const SearchOptions& opts) {
  check_level(S, k);
  if (static_cast<int>(y.size()) != S.dim())
    throw DimensionMismatch("nearest simplex: query dimension mismatch");
  const double tol = opts.policy.tolerance;
  const PointSet search =
      opts.policy.perturbation > 0.0 ? perturb(S, opts.policy.perturbation, opts.policy.seed) : S;

  const ApproxPolytope Q = build_polytope(S.dim(), epsilon);

  // Level 1: nearest single point under the gauge.
  double bestLambda = 0.0;
  IndexSubset bestSub;
  bestSub.kind = SubsetKind::Convex;
  for (int id = 0; id < search.size(); ++id) {
    const double g = Q.gauge(y, search[id]);
    if (bestSub.indices.empty() || g < bestLambda) {
      bestLambda = g;
      bestSub.indices = {id};
    }
  }

  // Levels 2..k: shoot (d-k')-faces with the convex counting scheme; any
  // simplex whose nearest point sits on a lower-dimensional face is caught
  // by the level of that face.
  SplitRng rng(opts.policy.seed ^ 0x5bd1e9955bd1e995ull);
  for (int level = 2; level <= k && level <= search.size(); ++level) {
    SplitRng levelRng = rng.split(level);
    const auto sweep = detail::best_over_faces(search, level, y, Q, bestLambda,
                                               CountMode::Convex, levelRng, opts);
    if (sweep.improved) {
      bestLambda = sweep.lambda;
      bestSub = sweep.subset;
    }
  }

  NearestSimplexResult res;
  res.subset = bestSub;
  res.gauge = bestLambda;
  const Projection proj = dist_point_to_simplex(y, S, bestSub, tol);
  res.euclid = proj.distance;
  res.foot = proj.foot;
  return res;
}

}  // namespace induced
