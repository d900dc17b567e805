#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "induced/polytope.hpp"
#include "induced/search_options.hpp"
#include "induced/types.hpp"

// Brute-force reference implementations for everything the fast algorithms
// produce.  These share no code with the fast path beyond primitive vector
// arithmetic: distances come from normal equations solved by a local
// elimination routine, and intersection tests from a local feasibility
// simplex, so agreement between the two routes is meaningful evidence.

namespace induced::oracle {

struct OracleReport {
  double optimum = 0.0;
  std::vector<IndexSubset> optimizers;  // all subsets within tie tolerance
  std::uint64_t candidates = 0;         // enumerated subset count
};

enum class Variant { Affine, Linear };

// Exact minimum of the point-to-affine-hull distance over all k-subsets
// (origin pinned as an extra vertex in the linear variant, with k-1 points
// drawn from S).  Throws BudgetExceeded when the enumeration is too large.
OracleReport brute_nearest_flat(const PointSet& S, std::span<const double> y, int k,
                                Variant variant, std::uint64_t budget = 50000000);

// Minimum point-to-convex-hull distance over all subsets of size 1..k.
OracleReport brute_nearest_simplex(const PointSet& S, std::span<const double> y, int k,
                                   std::uint64_t budget = 50000000);

enum class CountKind { Affine, Linear, Convex };

// Number of k-subsets whose affine/convex hull meets delta, by LP membership.
std::uint64_t brute_count(const PointSet& S, int k, const QuerySimplex& delta, CountKind kind,
                          std::uint64_t budget = 50000000);

// Closed-intersection feasibility used by brute_count (exposed for tests).
bool subset_intersects(const PointSet& S, const std::vector<int>& subset,
                       const QuerySimplex& delta, CountKind kind);

// Whether some d+1 points of S lie on a common hyperplane (determinant scan).
bool brute_degeneracy(const PointSet& S, double tol = 1e-9,
                      std::uint64_t budget = 50000000);

// Distance to the affine hull of pts via normal equations (independent of the
// orthogonalized projection in the geometry module).
double flat_distance_normal_equations(std::span<const double> y, const std::vector<Vec>& pts);

// Distance to conv(pts) by exhaustive face enumeration over normal-equation
// projections.
double simplex_distance_faces(std::span<const double> y, const std::vector<Vec>& pts);

}  // namespace induced::oracle
