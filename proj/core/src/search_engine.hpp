#pragma once

// Internal machinery shared by the affine and convex searches: per-prefix
// halfspace systems in circular-rank space, the deterministic count stream,
// uniform sampling by replay, and the shrinking binary search per face.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "induced/polytope.hpp"
#include "induced/range_counter.hpp"
#include "induced/rng.hpp"
#include "induced/search_options.hpp"
#include "induced/types.hpp"

namespace induced::detail {

enum class CountMode { Affine, Linear, Convex };

struct EngineSetup {
  const PointSet* S = nullptr;
  int k = 0;
  QuerySimplex delta;
  CountMode mode = CountMode::Affine;
  double tol = 1e-9;
};

// Number of slots drawn from S per ordered tuple.
inline int free_slots(CountMode mode, int k) { return mode == CountMode::Linear ? k - 1 : k; }
// Ordered prefix length over S (slots before a_{k-1}).
inline int prefix_len(CountMode mode, int k) {
  return mode == CountMode::Linear ? std::max(0, k - 3) : k - 2;
}
// The a_{k-1} slot is the pinned origin (linear variant with k == 2).
inline bool probe_is_origin(CountMode mode, int k) {
  return mode == CountMode::Linear && k == 2;
}

// Axes and counting structures for one ordered prefix.
class PrefixContext {
 public:
  PrefixContext(const EngineSetup& setup, const std::vector<int>& prefixIds);

  // Number of valid a_k for the probe (a live id, or -1 for the origin).
  std::uint64_t countFor(int probeId) const;
  // Ascending ids of valid a_k for the probe.
  std::vector<int> matchesFor(int probeId) const;

  const std::vector<int>& liveIds() const { return liveIds_; }

 private:
  struct AxisData {
    CircularAxis axis;
    double refAngle = 0.0;
    bool wantContaining = true;  // H axes keep the reference side, G axes exclude it
  };
  struct Arc {
    int lo = 0, hi = 0;  // half-open, doubled coordinates
  };

  void probeArcs(int probeId, std::vector<Arc>& containing, std::vector<Arc>& other) const;
  static bool inArc(int rank, const Arc& a, int m) {
    return (rank >= a.lo && rank < a.hi) || (rank + m >= a.lo && rank + m < a.hi);
  }

  const PointSet* S_ = nullptr;
  double tol_ = 1e-9;
  bool convex_ = false;
  std::vector<int> liveIds_;  // ascending
  std::vector<AxisData> axes_;
  std::vector<std::vector<int>> ranksByLive_;  // per live position, rank per axis
  int m_ = 0;
  RangeCounter counter_;          // affine/linear
  RangeCounter counterSide_[2];   // convex: 0 below, 1 above the split plane
  std::vector<char> sideById_;    // convex
  Vec origin_;
};

class CountEngine {
 public:
  CountEngine(EngineSetup setup, const SearchOptions& opts);

  const CountResult& total();
  // Ordered-tuple ordinal r in [0, totalOrdered); deterministic replay.
  IndexSubset sampleOrdinal(std::uint64_t r);
  std::vector<IndexSubset> enumerateAll();

  std::uint64_t prefixCount() const { return prefixTotal_; }

 private:
  SubsetKind subsetKind() const;
  IndexSubset assemble(const std::vector<int>& prefixIds, int probeId, int matchId) const;
  std::vector<int> unrankPrefix(std::uint64_t ordinal) const;
  template <class Fn>
  void forEachProbe(const PrefixContext& ctx, Fn&& fn) const;

  EngineSetup setup_;
  SearchOptions opts_;
  int prefixLen_ = 0;
  std::uint64_t prefixTotal_ = 1;
  CountResult total_;
  bool counted_ = false;
  std::vector<std::uint64_t> prefixSums_;       // cached per-prefix ordered counts
  std::optional<PrefixContext> soloCtx_;        // cached context when one prefix exists
};

// Exact face-restricted minimum below lambdaInit (see face_shoot).
struct ShootOutcome {
  double lambda = 0.0;
  IndexSubset subset;
};
std::optional<ShootOutcome> shoot_face(const PointSet& S, int k, std::span<const double> y,
                                       const std::vector<Vec>& faceDirs, double lambdaInit,
                                       CountMode mode, SplitRng& rng, const SearchOptions& opts,
                                       ShootTrace* trace);

// Sweep of every (d-k)-face of Q, threading the incumbent through as a prune.
struct FaceSweepOutcome {
  bool improved = false;
  double lambda = 0.0;
  IndexSubset subset;
};
FaceSweepOutcome best_over_faces(const PointSet& S, int k, std::span<const double> y,
                                 const ApproxPolytope& Q, double lambdaInit, CountMode mode,
                                 SplitRng& rng, const SearchOptions& opts);

std::uint64_t factorial_u64(int n);

}  // namespace induced::detail
