#pragma once

#include <optional>
#include <span>

#include "induced/polytope.hpp"
#include "induced/range_counter.hpp"
#include "induced/rng.hpp"
#include "induced/search_options.hpp"
#include "induced/types.hpp"

// Approximate nearest induced flat: count the k-subsets whose affine hull
// meets a shooting simplex via circular-rank range queries, sample a uniform
// intersecting flat, shrink lambda by randomized binary search per
// (d-k)-face of the gauge polytope, and keep the best face over all faces.

namespace induced {

enum class FlatVariant { Affine, Linear };

// Lemma-style predicate: aff(A) meets delta iff the last point of A lies in
// the intersection of all vertex-side halfspaces or all opposite halfspaces.
// Boundary contact at the tolerance counts as a miss (strict semantics).
bool intersects_affine(const PointSet& S, const IndexSubset& A, const QuerySimplex& delta,
                       double tol);

CountResult count_intersecting(const PointSet& S, int k, const QuerySimplex& delta,
                               FlatVariant variant, const SearchOptions& opts);

// Uniform over unordered intersecting flats (each is represented by the same
// number of ordered tuples).  Throws EmptyRange when nothing intersects.
IndexSubset sample_intersecting(const PointSet& S, int k, const QuerySimplex& delta,
                                FlatVariant variant, SplitRng& rng, const SearchOptions& opts);

struct ShootResult {
  double lambda = 0.0;
  IndexSubset flat;
};

// Exact minimum, over induced flats hit by the cone of y over faceDirs, of
// the face-restricted dilation; nullopt when no candidate lies below
// lambdaInit on this face.
std::optional<ShootResult> face_shoot(const PointSet& S, int k, std::span<const double> y,
                                      const std::vector<Vec>& faceDirs, double lambdaInit,
                                      FlatVariant variant, SplitRng& rng,
                                      const SearchOptions& opts, ShootTrace* trace = nullptr);

struct NearestFlatResult {
  IndexSubset subset;
  double gauge = 0.0;   // polyhedral distance of the returned flat
  double euclid = 0.0;  // exact Euclidean distance of the returned flat
  Vec foot;
};

// (1+epsilon)-approximate nearest induced flat: the returned flat's Euclidean
// distance is within a factor 1+epsilon of the optimum.
NearestFlatResult nearest_flat_approx(const PointSet& S, std::span<const double> y, int k,
                                      double epsilon, FlatVariant variant,
                                      const SearchOptions& opts);

// Affine-degeneracy audit: for each y in S, searches for a near-zero-distance
// hyperplane induced by the remaining points.  Returns the flagged ids.
std::vector<int> degeneracy_test(const PointSet& S, const SearchOptions& opts);

}  // namespace induced
