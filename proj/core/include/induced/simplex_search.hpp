#pragma once

#include <span>

#include "induced/flat_search.hpp"

// Approximate nearest induced simplex: the affine machinery with the
// halfspace system extended by the prefix-point hyperplanes, the fixed split
// hyperplane realized as two counting structures, and a fallback loop over
// smaller subset sizes for simplices whose nearest point sits on a proper
// face.

namespace induced {

// conv(A) meets delta iff the last point of A lies in the single intersection
// of the vertex-side halfspaces and the prefix-exclusion halfspaces.
bool intersects_convex(const PointSet& S, const IndexSubset& A, const QuerySimplex& delta,
                       double tol);

CountResult count_intersecting_convex(const PointSet& S, int k, const QuerySimplex& delta,
                                      const SearchOptions& opts);

IndexSubset sample_intersecting_convex(const PointSet& S, int k, const QuerySimplex& delta,
                                       SplitRng& rng, const SearchOptions& opts);

struct NearestSimplexResult {
  IndexSubset subset;   // size k' <= k
  double gauge = 0.0;   // polyhedral distance of the returned simplex
  double euclid = 0.0;  // exact Euclidean distance of the returned simplex
  Vec foot;
};

NearestSimplexResult nearest_simplex_approx(const PointSet& S, std::span<const double> y, int k,
                                            double epsilon, const SearchOptions& opts);

}  // namespace induced
