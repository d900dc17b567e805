#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "induced/types.hpp"

// Circular rank coordinates induced by hyperplanes rotating about a
// (d-2)-flat, and static orthogonal range counting over those ranks.

namespace induced {

// Angular order of the live points of S in the 2-dimensional orthogonal
// complement of a pivot (d-2)-flat.  Ranks are positions in the sorted order
// of angles in [0, 2pi); the halfspace bounded by the hyperplane through the
// pivot flat and a probe at angle theta is exactly the open half-circle
// (theta, theta+pi), which is an interval in doubled rank space.
class CircularAxis {
 public:
  CircularAxis() = default;

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<int>& liveIds() const { return ids_; }  // sorted by rank
  int rankOf(int id) const { return rankById_[id]; }
  double angleAtRank(int rank) const { return angles_[rank]; }
  // Unwrapped antipode position in (rank, rank+m): the first doubled position
  // whose angle reaches angle(rank)+pi.
  int antipodeOf(int rank) const { return antipode_[rank]; }
  // Same, but DegenerateInput when a live point sits on the antipodal
  // hyperplane of this rank at the tolerance.
  int antipodeChecked(int rank) const;

  // Angle of an arbitrary probe point; DegenerateInput if the probe lies on
  // the pivot flat at the relative tolerance.
  double angleOf(std::span<const double> p) const;

  // Number of live angles strictly below theta, theta in [0, 4pi), counting
  // doubled copies.  DegenerateInput if theta collides with a live angle
  // mod pi at the tolerance.
  int positionOf(double theta) const;

  // Whether refAngle lies in the open half-circle (theta, theta+pi).
  // DegenerateInput when refAngle sits on the boundary at the tolerance.
  static bool inOpenHalf(double theta, double refAngle, double tol);

  // Threshold below which two angles are treated as an unresolvable tie.
  // Kept near the floating-point noise floor rather than at the geometric
  // tolerance: a sorted order resolves honest near-ties deterministically,
  // and only coincidences at noise scale are genuinely ambiguous.
  double tieTol() const { return tieTol_; }

 private:
  friend CircularAxis circular_ranks(const PointSet&, const std::vector<int>&,
                                     const AffineFlat&, double);
  std::vector<int> ids_;
  std::vector<double> angles_;
  std::vector<int> antipode_;
  std::vector<int> rankById_;
  Vec base_, u_, w_;
  double tol_ = 1e-9;
  double tieTol_ = 1e-13;
};

// Ranks of S minus `excluded` (sorted id list) about pivotFlat (dimension d-2).
CircularAxis circular_ranks(const PointSet& S, const std::vector<int>& excluded,
                            const AffineFlat& pivotFlat, double tol);

// Live points with one rank per axis, ready for counting.
struct RankedPointSet {
  std::vector<CircularAxis> axes;
  std::vector<int> liveIds;
  std::vector<std::vector<int>> rankVectors;  // parallel to liveIds

  static RankedPointSet assemble(std::vector<CircularAxis> axes);
};

// Closed/open interval of ranks with wraparound: values live in [0, 2m).
// lo > hi encodes the wrapped arc through m-1|0.
struct RankInterval {
  int lo = 0, hi = 0;
  bool openLo = false, openHi = false;
};

// Static layered range tree (last axis resolved by sorted-array binary
// search).  Circular wraparound is realized with the doubled-coordinate
// semantics: each point also counts at rank+m on every axis; the
// implementation resolves the doubling by query decomposition instead of
// materializing the copies.
class RangeCounter {
 public:
  RangeCounter() = default;
  // One integer rank vector per point; coordinates must be distinct per axis
  // and lie in [0, period).
  RangeCounter(std::vector<std::vector<int>> points, int period);

  static RangeCounter build(const RankedPointSet& rp);

  int dims() const { return dims_; }
  int size() const { return n_; }
  int period() const { return period_; }

  std::uint64_t count(const std::vector<RankInterval>& rect) const;
  // Doubled half-open boxes: per axis [lo, hi), 0 <= lo <= hi <= lo+period <= 2*period.
  std::uint64_t countHalfOpen(const std::vector<std::pair<int, int>>& rect) const;

 private:
  struct Level;
  int dims_ = 0, n_ = 0, period_ = 0;
  std::shared_ptr<const Level> root_;
};

}  // namespace induced
