#include "induced/range_counter.hpp"

#include <algorithm>
#include <cmath>

#include "induced/geometry.hpp"

namespace induced {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

double CircularAxis::angleOf(std::span<const double> p) const {
  Vec x = sub(p, base_);
  const double a = dot(x, u_);
  const double b = dot(x, w_);
  // Relative to |x|: this is an angular-resolution condition, so probes close
  // to the base with a clean angle are fine.
  const double r = std::hypot(a, b);
  if (r <= tol_ * std::max(norm2(x), 1e-300))
    throw DegenerateInput("circular_ranks: point lies on the pivot flat");
  double theta = std::atan2(b, a);
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta = 0.0;
  return theta;
}

int CircularAxis::positionOf(double theta) const {
  int base = 0;
  if (theta >= kTwoPi) {
    theta -= kTwoPi;
    base = size();
  }
  const auto it = std::lower_bound(angles_.begin(), angles_.end(), theta);
  const int pos = static_cast<int>(it - angles_.begin());
  // Collision guard mod pi: a probe angle matching a live angle means the
  // probe's hyperplane passes through a live point.
  const int m = size();
  for (int nb : {pos - 1, pos, pos + 1}) {
    if (m == 0) break;
    const int idx = ((nb % m) + m) % m;
    double diff = std::abs(angles_[idx] - theta);
    diff = std::min(diff, kTwoPi - diff);
    diff = std::min(diff, std::abs(diff - M_PI));
    if (diff <= tieTol_)
      throw DegenerateInput("circular_ranks: probe angle collides with a live point");
  }
  return base + pos;
}

int CircularAxis::antipodeChecked(int rank) const {
  const int m = size();
  const int a = antipode_[rank];
  double target = angles_[rank] + M_PI;
  if (target >= kTwoPi) target -= kTwoPi;
  for (int nb : {a - 1, a}) {
    const int idx = ((nb % m) + m) % m;
    if (std::abs(angles_[idx] - target) <= tieTol_)
      throw DegenerateInput("circular_ranks: a live point is antipodal to the probe");
  }
  return a;
}

bool CircularAxis::inOpenHalf(double theta, double refAngle, double tol) {
  double diff = std::fmod(refAngle - theta, kTwoPi);
  if (diff < 0.0) diff += kTwoPi;
  if (diff <= tol || std::abs(diff - M_PI) <= tol || kTwoPi - diff <= tol)
    throw DegenerateInput("circular order: reference direction on the hyperplane");
  return diff < M_PI;
}

CircularAxis circular_ranks(const PointSet& S, const std::vector<int>& excluded,
                            const AffineFlat& pivotFlat, double tol) {
  const int d = S.dim();
  if (pivotFlat.flatDim() != d - 2)
    throw DimensionMismatch("circular_ranks: pivot flat must have dimension d-2");

  CircularAxis axis;
  axis.tol_ = tol;
  axis.tieTol_ = std::min(tol, 1e-13);
  axis.base_ = pivotFlat.base;

  // Orthonormal basis of the 2D complement, from coordinate directions.
  auto residual = [&](int j, const std::vector<Vec>& extra) {
    Vec e(d, 0.0);
    e[j] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& b : pivotFlat.basis) axpy(e, -dot(e, b), b);
      for (const Vec& b : extra) axpy(e, -dot(e, b), b);
    }
    return e;
  };
  std::vector<Vec> found;
  for (int j = 0; j < d && found.size() < 2; ++j) {
    Vec r = residual(j, found);
    if (norm2(r) > 1e-6) {
      normalize_inplace(r);
      found.push_back(std::move(r));
    }
  }
  if (found.size() != 2)
    throw DegenerateInput("circular_ranks: could not complete the complement basis");
  axis.u_ = found[0];
  axis.w_ = found[1];

  std::vector<std::pair<double, int>> order;
  axis.rankById_.assign(S.size(), -1);
  for (int id = 0; id < S.size(); ++id) {
    if (std::binary_search(excluded.begin(), excluded.end(), id)) continue;
    order.emplace_back(axis.angleOf(S[id]), id);
  }
  std::sort(order.begin(), order.end());
  const int m = static_cast<int>(order.size());
  axis.ids_.resize(m);
  axis.angles_.resize(m);
  for (int r = 0; r < m; ++r) {
    axis.angles_[r] = order[r].first;
    axis.ids_[r] = order[r].second;
    axis.rankById_[order[r].second] = r;
  }

  // Ties mod pi are degenerate: two live points coplanar with the pivot flat.
  for (int r = 0; r < m; ++r) {
    const double cur = axis.angles_[r];
    const double next = (r + 1 < m) ? axis.angles_[r + 1] : axis.angles_[0] + kTwoPi;
    if (next - cur <= axis.tieTol_)
      throw DegenerateInput("circular_ranks: angle tie between live points");
  }
  // Antipodal coincidences are legal in the static order; they only become
  // degenerate when the colliding point ends up on a query hyperplane, which
  // antipodeChecked() detects at query time.
  axis.antipode_.resize(m);
  for (int r = 0; r < m; ++r) {
    double target = axis.angles_[r] + M_PI;
    int base = 0;
    if (target >= kTwoPi) {
      target -= kTwoPi;
      base = m;
    }
    const auto it = std::lower_bound(axis.angles_.begin(), axis.angles_.end(), target);
    axis.antipode_[r] = base + static_cast<int>(it - axis.angles_.begin());
  }
  return axis;
}

RankedPointSet RankedPointSet::assemble(std::vector<CircularAxis> axes) {
  RankedPointSet rp;
  rp.axes = std::move(axes);
  if (rp.axes.empty()) return rp;
  rp.liveIds = rp.axes[0].liveIds();
  std::sort(rp.liveIds.begin(), rp.liveIds.end());
  for (const CircularAxis& ax : rp.axes) {
    if (ax.size() != static_cast<int>(rp.liveIds.size()))
      throw DimensionMismatch("RankedPointSet: axes disagree on the live set");
  }
  rp.rankVectors.reserve(rp.liveIds.size());
  for (int id : rp.liveIds) {
    std::vector<int> v(rp.axes.size());
    for (std::size_t a = 0; a < rp.axes.size(); ++a) v[a] = rp.axes[a].rankOf(id);
    rp.rankVectors.push_back(std::move(v));
  }
  return rp;
}

// ---------------------------------------------------------------------------
// Layered range tree.

struct RangeCounter::Level {
  // Small node sets become scan buckets: this trades a constant-factor query
  // cost for a full log factor of memory.
  static constexpr std::size_t kBucketCap = 8;

  bool last = false;
  std::vector<int> coords;  // sorted coords of this node set at this axis
  std::vector<const std::vector<int>*> bucket;
  std::size_t axis = 0;
  struct TNode {
    std::unique_ptr<TNode> l, r;
    std::unique_ptr<Level> sub;
  };
  std::unique_ptr<TNode> root;

  Level(std::vector<const std::vector<int>*> pts, std::size_t ax, std::size_t g) : axis(ax) {
    std::sort(pts.begin(), pts.end(),
              [ax](const auto* a, const auto* b) { return (*a)[ax] < (*b)[ax]; });
    coords.reserve(pts.size());
    for (const auto* p : pts) coords.push_back((*p)[ax]);
    last = (ax + 1 == g);
    if (last) return;
    if (pts.size() <= kBucketCap) {
      bucket = std::move(pts);
      return;
    }
    root = buildNode(pts, 0, pts.size(), ax, g);
  }

  static std::unique_ptr<TNode> buildNode(const std::vector<const std::vector<int>*>& pts,
                                          std::size_t lo, std::size_t hi, std::size_t axis,
                                          std::size_t g) {
    auto node = std::make_unique<TNode>();
    node->sub = std::make_unique<Level>(
        std::vector<const std::vector<int>*>(pts.begin() + lo, pts.begin() + hi), axis + 1, g);
    if (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      node->l = buildNode(pts, lo, mid, axis, g);
      node->r = buildNode(pts, mid, hi, axis, g);
    }
    return node;
  }

  std::uint64_t query(std::span<const std::pair<int, int>> rect) const {
    const auto [a, b] = rect[0];
    if (!bucket.empty()) {
      std::uint64_t total = 0;
      for (const auto* p : bucket) {
        bool ok = true;
        for (std::size_t off = 0; ok && off < rect.size(); ++off) {
          const int c = (*p)[axis + off];
          ok = c >= rect[off].first && c < rect[off].second;
        }
        total += ok;
      }
      return total;
    }
    const std::size_t iLo = std::lower_bound(coords.begin(), coords.end(), a) - coords.begin();
    const std::size_t iHi = std::lower_bound(coords.begin(), coords.end(), b) - coords.begin();
    if (iLo >= iHi) return 0;
    if (last) return iHi - iLo;
    return queryNode(root.get(), 0, coords.size(), iLo, iHi, rect.subspan(1));
  }

  static std::uint64_t queryNode(const TNode* node, std::size_t lo, std::size_t hi,
                                 std::size_t iLo, std::size_t iHi,
                                 std::span<const std::pair<int, int>> rest) {
    if (iLo <= lo && hi <= iHi) return node->sub->query(rest);
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t total = 0;
    if (iLo < mid && node->l)
      total += queryNode(node->l.get(), lo, mid, iLo, std::min(iHi, mid), rest);
    if (iHi > mid && node->r)
      total += queryNode(node->r.get(), mid, hi, std::max(iLo, mid), iHi, rest);
    return total;
  }
};

RangeCounter::RangeCounter(std::vector<std::vector<int>> points, int period)
    : dims_(points.empty() ? 0 : static_cast<int>(points[0].size())),
      n_(static_cast<int>(points.size())),
      period_(period) {
  if (n_ == 0) return;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dims_)
      throw DimensionMismatch("RangeCounter: inconsistent rank vector length");
    for (int c : p)
      if (c < 0 || c >= period_) throw InvalidRectangle("RangeCounter: rank out of [0, period)");
  }
  auto storage = std::make_shared<std::vector<std::vector<int>>>(std::move(points));
  std::vector<const std::vector<int>*> ptrs;
  ptrs.reserve(storage->size());
  for (const auto& p : *storage) ptrs.push_back(&p);
  // The Level tree keeps pointers into `storage`; tie their lifetimes.
  struct Holder : Level {
    Holder(std::vector<const std::vector<int>*> pts, std::size_t g,
           std::shared_ptr<std::vector<std::vector<int>>> keep)
        : Level(std::move(pts), 0, g), keep_(std::move(keep)) {}
    std::shared_ptr<std::vector<std::vector<int>>> keep_;
  };
  root_ = std::make_shared<const Holder>(std::move(ptrs), static_cast<std::size_t>(dims_),
                                         storage);
}

RangeCounter RangeCounter::build(const RankedPointSet& rp) {
  return RangeCounter(rp.rankVectors, static_cast<int>(rp.liveIds.size()));
}

std::uint64_t RangeCounter::countHalfOpen(const std::vector<std::pair<int, int>>& rect) const {
  if (n_ == 0) return 0;
  if (static_cast<int>(rect.size()) != dims_)
    throw DimensionMismatch("RangeCounter: rectangle dimensionality mismatch");
  // Per-axis decomposition of the doubled interval into base-line pieces.
  std::vector<std::vector<std::pair<int, int>>> pieces(dims_);
  for (int a = 0; a < dims_; ++a) {
    auto [A, B] = rect[a];
    if (B <= A) return 0;
    if (A < 0 || B > 2 * period_ || B - A > period_)
      throw InvalidRectangle("RangeCounter: interval outside the doubled line");
    if (B <= period_)
      pieces[a] = {{A, B}};
    else if (A >= period_)
      pieces[a] = {{A - period_, B - period_}};
    else
      pieces[a] = {{A, period_}, {0, B - period_}};
  }
  std::uint64_t total = 0;
  std::vector<std::pair<int, int>> combo(dims_);
  std::vector<std::size_t> pick(dims_, 0);
  while (true) {
    for (int a = 0; a < dims_; ++a) combo[a] = pieces[a][pick[a]];
    total += root_->query(combo);
    int a = dims_ - 1;
    while (a >= 0 && ++pick[a] == pieces[a].size()) {
      pick[a] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return total;
}

std::uint64_t RangeCounter::count(const std::vector<RankInterval>& rect) const {
  if (n_ == 0) return 0;
  if (static_cast<int>(rect.size()) != dims_)
    throw DimensionMismatch("RangeCounter: rectangle dimensionality mismatch");
  std::vector<std::pair<int, int>> halfOpen(dims_);
  for (int a = 0; a < dims_; ++a) {
    const RankInterval& iv = rect[a];
    if (iv.lo < 0 || iv.lo >= 2 * period_ || iv.hi < 0 || iv.hi >= 2 * period_)
      throw InvalidRectangle("RangeCounter: bounds outside [0, 2m)");
    int hi = iv.hi < iv.lo ? iv.hi + period_ : iv.hi;  // wraparound arc
    const int A = iv.lo + (iv.openLo ? 1 : 0);
    const int B = hi + (iv.openHi ? 0 : 1);
    if (B - A > period_) throw InvalidRectangle("RangeCounter: interval longer than the period");
    halfOpen[a] = {A, B};
  }
  return countHalfOpen(halfOpen);
}

}  // namespace induced
