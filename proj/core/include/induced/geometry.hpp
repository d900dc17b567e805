#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "induced/types.hpp"

// Affine primitives: sidedness, hulls, point-to-flat and point-to-simplex
// distances, general-position checks.  Everything here is pure and
// thread-safe; degeneracies fail with DegenerateInput at the caller's
// tolerance rather than being silently repaired.

namespace induced {

enum class Side { Below = -1, On = 0, Above = 1 };

// h holds d+1 affine coefficients: value = h[0..d)·p + h[d].
// |value| <= tol * scale(h, p) classifies as On.
Side side_of_hyperplane(std::span<const double> h, std::span<const double> p, double tol);

// Hyperplane through d affinely independent points, coefficients as above.
// The normal part is unit length; orientation is arbitrary but deterministic.
Vec hyperplane_through(const std::vector<Vec>& pts, double tol);

// Orthonormal basis of aff(pts) via sequentially re-orthogonalized
// Gram-Schmidt.  Throws DegenerateInput if the points are affinely dependent
// at tolerance tol.
AffineFlat affine_hull_of(const std::vector<Vec>& pts, double tol);
AffineFlat affine_hull(const PointSet& S, const IndexSubset& A, double tol);

struct Projection {
  double distance = 0.0;
  Vec foot;
};

// Orthogonal projection of y onto F.
Projection dist_point_to_flat(std::span<const double> y, const AffineFlat& F);

// Minimum distance to conv(points of A), by projecting onto aff(A) and
// recursing on the facets whenever the foot leaves the simplex.
Projection dist_point_to_simplex(std::span<const double> y, const PointSet& S,
                                 const IndexSubset& A, double tol);
Projection dist_point_to_simplex_of(std::span<const double> y, const std::vector<Vec>& pts,
                                    double tol);

struct GeneralPositionReport {
  // Each entry is a (j+2)-subset of ids lying on a common j-flat.  The query
  // point, when given, has id S.size().
  std::vector<std::vector<int>> dependent;
  bool exhaustive = true;  // false when the subset scan was sampled
};

// Scans (j+2)-subsets of S (plus y when non-null) for affine dependence, for
// every j <= level.  Exhaustive while the number of subsets stays within
// `budget`, sampled (seeded) above it.
GeneralPositionReport validate_general_position(const PointSet& S, const Vec* y, int level,
                                                const NumericPolicy& policy,
                                                std::size_t budget = 200000);

// Independent uniform coordinate jitter in [-rho*scale, rho*scale],
// deterministic under seed.  rho == 0 returns the input unchanged.
PointSet perturb(const PointSet& S, double rho, std::uint64_t seed);

}  // namespace induced
