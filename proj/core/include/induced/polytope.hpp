#pragma once

#include <optional>
#include <span>
#include <vector>

#include "induced/types.hpp"

// Inner approximation Q of the unit ball with few facets: the gauge of Q
// approximates the Euclidean norm within a factor 1+epsilon.  Q is built so
// that every vertex is a unit vector and every facet's supporting plane lies
// at distance >= 1/(1+epsilon) from the origin; both facts are certified at
// construction time, together with closure and local convexity of the
// triangulated boundary.

namespace induced {

struct PolytopeFacet {
  std::vector<int> vertexIds;  // d affinely independent vertices, sorted
  Vec normal;                  // outward unit normal
  double offset = 0.0;         // normal · x = offset on the supporting plane
};

class ApproxPolytope {
 public:
  int dim = 0;
  double epsilon = 0.0;
  std::vector<Vec> vertices;
  std::vector<PolytopeFacet> facets;

  // j-dimensional boundary faces as sorted vertex-id tuples, j in [0, d-1].
  const std::vector<std::vector<int>>& faces(int j) const;

  // Directions of a face's vertices.
  std::vector<Vec> faceDirections(const std::vector<int>& face) const;

  // Smallest lambda with v in y + lambda*Q: max over facets of
  // normal·(v-y)/offset, clamped at zero.
  double gauge(std::span<const double> y, std::span<const double> v) const;

  // Documented per-dimension constant for the vertex-count bound
  // |V| <= C(d) * epsilon^{-(d-1)/2}.
  static double vertexBoundConstant(int d);

 private:
  friend ApproxPolytope build_polytope(int d, double epsilon);
  mutable std::vector<std::vector<std::vector<int>>> faceIndex_;  // built eagerly
  void buildFaceIndex();
};

// 2 <= d <= 8, 0 < epsilon <= 1.
ApproxPolytope build_polytope(int d, double epsilon);

// conv({apex} union apex + lambda * faceDirs): the shooting simplex.
struct QuerySimplex {
  Vec apex;
  std::vector<Vec> faceDirs;  // d-k+1 unit directions, a (d-k)-face of Q
  double lambda = 0.0;

  int ambientDim() const { return static_cast<int>(apex.size()); }
  // apex followed by apex + lambda*dir, in faceDirs order.
  std::vector<Vec> vertexList() const;
};

struct LambdaHit {
  double lambda = 0.0;
  Vec point;  // apex + sum_i s_i * faceDirs[i], the first contact point
};

// Smallest lambda at which conv({y} union y+lambda*faceDirs) meets the target
// (min of sum s_i with y + sum s_i v_i constrained to the target).
// nullopt when the cone over the face misses the target entirely.
std::optional<LambdaHit> lambda_of_target(std::span<const double> y,
                                          const std::vector<Vec>& faceDirs,
                                          const AffineFlat& target, double tol);

// Convex-hull target variant: membership via barycentric weights over pts.
std::optional<LambdaHit> lambda_of_target_convex(std::span<const double> y,
                                                 const std::vector<Vec>& faceDirs,
                                                 const std::vector<Vec>& pts, double tol);

}  // namespace induced
