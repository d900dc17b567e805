#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "induced/rng.hpp"
#include "induced/search_options.hpp"
#include "induced/types.hpp"

// Exact nearest induced hyperplane (k = d) via point-hyperplane duality, a
// random-sample 1/r cutting, and recursive refined-zone vertex collection.
// The collected candidate set is a superset of the refined-zone vertices and
// a subset of all arrangement vertices; it provably contains the dual of the
// nearest induced hyperplane, so an exact distance pass over it finishes the
// job.  d = 2 is the supported contract; d = 3 sits behind `enableD3`.

namespace induced {

// Non-vertical hyperplane x_d = slope · x' - offset; also the dual of the
// point (slope, offset).
struct DualHyperplane {
  Vec slope;  // d-1 entries
  double offset = 0.0;
  int sourceId = -1;
};

// Standard duality: the point p maps to x_d = p_1 x_1 + ... + p_{d-1} x_{d-1} - p_d.
DualHyperplane dualize_point(std::span<const double> p, int sourceId);
std::vector<DualHyperplane> dualize(const PointSet& S);
// Involution: the dual hyperplane maps back to its coefficient point.
Vec dual_to_point(const DualHyperplane& h);

// A cutting cell: a convex polygon (usually a triangle of the bottom-vertex
// decomposition) with per-vertex provenance (ids of the two input lines that
// meet there, -1 for clip boundaries) and its conflict list.
struct CutCell {
  std::vector<Vec> verts;  // CCW
  std::vector<std::pair<int, int>> vertProv;
  std::vector<int> conflicts;
};

struct Cutting2 {
  std::vector<CutCell> cells;
  double boxRadius = 0.0;
};

struct HyperplaneExactOptions {
  NumericPolicy policy;
  int cuttingR = 4;   // 1/r parameter
  int baseSize = 40;  // below this, the full arrangement is built directly
  int maxRetries = 20;
  bool enableD3 = false;  // experimental dimension-generic path
};

// Bounding radius guaranteed to contain every pairwise intersection of the
// lines (sorted-slope gap bound, padded by 2x).
double arrangement_box_radius(const std::vector<DualHyperplane>& lines);

// Random-sample 1/r cutting of the plane restricted to [-R, R]^2: cells are
// triangles of the bottom-vertex decomposition of a sample's arrangement,
// each crossed by at most |lines|/r input lines (verified; resampled on
// failure up to maxRetries).
Cutting2 build_cutting2(const std::vector<DualHyperplane>& lines, int r, double boxRadius,
                        SplitRng& rng, int maxRetries = 20);

struct RefinedZoneResult {
  std::vector<std::vector<int>> candidates;  // sorted source-id tuples (size d)
  std::uint64_t emitted = 0;                 // raw emissions before dedup
};

// All candidate vertices met while recursing through the cutting cells that
// the query's dual crosses.
RefinedZoneResult refined_zone_vertices(const DualHyperplane& queryDual,
                                        const std::vector<DualHyperplane>& lines,
                                        const HyperplaneExactOptions& opts, SplitRng& rng);

struct NearestHyperplaneResult {
  IndexSubset subset;  // d ids
  double distance = 0.0;
  Vec foot;
  std::vector<IndexSubset> ties;  // other candidates at the same distance (tolerance)
  std::uint64_t candidatesExamined = 0;
};

NearestHyperplaneResult nearest_hyperplane_exact(const PointSet& S, std::span<const double> y,
                                                 const HyperplaneExactOptions& opts);

}  // namespace induced
