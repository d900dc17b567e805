#include "search_engine.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <thread>

#include "induced/geometry.hpp"

namespace induced::detail {

std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

PrefixContext::PrefixContext(const EngineSetup& setup, const std::vector<int>& prefixIds)
    : S_(setup.S), tol_(setup.tol), convex_(setup.mode == CountMode::Convex) {
  const PointSet& S = *S_;
  const int d = S.dim();
  origin_.assign(d, 0.0);

  std::vector<Vec> prefixPts;
  if (setup.mode == CountMode::Linear && setup.k >= 3) prefixPts.push_back(origin_);
  for (int id : prefixIds) prefixPts.push_back(S.row(id));

  std::vector<int> excluded = prefixIds;
  std::sort(excluded.begin(), excluded.end());

  const std::vector<Vec> B = setup.delta.vertexList();

  // One axis per simplex vertex: pivot flat spanned by the opposite facet and
  // the prefix; the arc on b_i's side realizes H_i^+.
  for (std::size_t i = 0; i < B.size(); ++i) {
    std::vector<Vec> pivotPts;
    for (std::size_t j = 0; j < B.size(); ++j)
      if (j != i) pivotPts.push_back(B[j]);
    pivotPts.insert(pivotPts.end(), prefixPts.begin(), prefixPts.end());
    AxisData ax;
    ax.axis = circular_ranks(S, excluded, affine_hull_of(pivotPts, tol_), tol_);
    ax.refAngle = ax.axis.angleOf(B[i]);
    ax.wantContaining = true;
    axes_.push_back(std::move(ax));
  }

  if (convex_) {
    // One axis per prefix point: pivot spanned by the whole simplex and the
    // other prefix points; the arc away from t_j realizes G_j^-.
    for (std::size_t j = 0; j < prefixIds.size(); ++j) {
      std::vector<Vec> pivotPts = B;
      for (std::size_t l = 0; l < prefixPts.size(); ++l)
        if (l != j) pivotPts.push_back(prefixPts[l]);
      AxisData ax;
      ax.axis = circular_ranks(S, excluded, affine_hull_of(pivotPts, tol_), tol_);
      ax.refAngle = ax.axis.angleOf(S[prefixIds[j]]);
      ax.wantContaining = false;
      axes_.push_back(std::move(ax));
    }
    // The last exclusion hyperplane is fixed given the prefix; it becomes the
    // two-sided structure split instead of an axis.
    std::vector<Vec> splitPts = B;
    splitPts.insert(splitPts.end(), prefixPts.begin(), prefixPts.end());
    const Vec split = hyperplane_through(splitPts, tol_);
    sideById_.assign(S.size(), 0);
    for (int id = 0; id < S.size(); ++id) {
      if (std::binary_search(excluded.begin(), excluded.end(), id)) continue;
      const Side s = side_of_hyperplane(split, S[id], tol_);
      if (s == Side::On)
        throw OnHyperplane("convex count: a point lies on the fixed split hyperplane");
      sideById_[id] = s == Side::Above ? 1 : 0;
    }
  }

  liveIds_ = axes_[0].axis.liveIds();
  std::sort(liveIds_.begin(), liveIds_.end());
  m_ = static_cast<int>(liveIds_.size());
  ranksByLive_.resize(liveIds_.size());
  for (std::size_t li = 0; li < liveIds_.size(); ++li) {
    std::vector<int> v(axes_.size());
    for (std::size_t a = 0; a < axes_.size(); ++a) v[a] = axes_[a].axis.rankOf(liveIds_[li]);
    ranksByLive_[li] = std::move(v);
  }

  if (!convex_) {
    counter_ = RangeCounter(ranksByLive_, m_);
  } else {
    std::vector<std::vector<int>> below, above;
    for (std::size_t li = 0; li < liveIds_.size(); ++li)
      (sideById_[liveIds_[li]] ? above : below).push_back(ranksByLive_[li]);
    counterSide_[0] = RangeCounter(std::move(below), m_);
    counterSide_[1] = RangeCounter(std::move(above), m_);
  }
}

void PrefixContext::probeArcs(int probeId, std::vector<Arc>& containing,
                              std::vector<Arc>& other) const {
  containing.resize(axes_.size());
  other.resize(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const AxisData& ax = axes_[a];
    double theta;
    Arc inside, outside;
    if (probeId >= 0) {
      const int r = ax.axis.rankOf(probeId);
      theta = ax.axis.angleAtRank(r);
      const int anti = ax.axis.antipodeChecked(r);
      inside = {r + 1, anti};
      outside = {anti, r + m_};
    } else {
      theta = ax.axis.angleOf(origin_);
      const int p0 = ax.axis.positionOf(theta);
      const int p1 = ax.axis.positionOf(theta + M_PI);
      inside = {p0, p1};
      outside = {p1, p0 + m_};
    }
    const bool refIn = CircularAxis::inOpenHalf(theta, ax.refAngle, ax.axis.tieTol());
    containing[a] = refIn ? inside : outside;
    other[a] = refIn ? outside : inside;
  }
}

std::uint64_t PrefixContext::countFor(int probeId) const {
  std::vector<Arc> cont, other;
  probeArcs(probeId, cont, other);
  if (!convex_) {
    std::vector<std::pair<int, int>> plus(axes_.size()), minus(axes_.size());
    for (std::size_t a = 0; a < axes_.size(); ++a) {
      plus[a] = {cont[a].lo, cont[a].hi};
      minus[a] = {other[a].lo, other[a].hi};
    }
    return counter_.countHalfOpen(plus) + counter_.countHalfOpen(minus);
  }
  std::vector<std::pair<int, int>> rect(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const Arc& arc = axes_[a].wantContaining ? cont[a] : other[a];
    rect[a] = {arc.lo, arc.hi};
  }
  return counterSide_[sideById_[probeId] ? 0 : 1].countHalfOpen(rect);
}

std::vector<int> PrefixContext::matchesFor(int probeId) const {
  std::vector<Arc> cont, other;
  probeArcs(probeId, cont, other);
  std::vector<int> out;
  for (std::size_t li = 0; li < liveIds_.size(); ++li) {
    const int id = liveIds_[li];
    if (id == probeId) continue;
    const std::vector<int>& ranks = ranksByLive_[li];
    if (!convex_) {
      bool allPlus = true, allMinus = true;
      for (std::size_t a = 0; a < axes_.size() && (allPlus || allMinus); ++a) {
        if (!inArc(ranks[a], cont[a], m_)) allPlus = false;
        if (!inArc(ranks[a], other[a], m_)) allMinus = false;
      }
      if (allPlus || allMinus) out.push_back(id);
    } else {
      if (sideById_[id] == sideById_[probeId]) continue;
      bool all = true;
      for (std::size_t a = 0; a < axes_.size() && all; ++a) {
        const Arc& arc = axes_[a].wantContaining ? cont[a] : other[a];
        if (!inArc(ranks[a], arc, m_)) all = false;
      }
      if (all) out.push_back(id);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

CountEngine::CountEngine(EngineSetup setup, const SearchOptions& opts)
    : setup_(std::move(setup)), opts_(opts) {
  prefixLen_ = prefix_len(setup_.mode, setup_.k);
  const std::uint64_t n = static_cast<std::uint64_t>(setup_.S->size());
  prefixTotal_ = 1;
  for (int i = 0; i < prefixLen_; ++i) prefixTotal_ *= n - static_cast<std::uint64_t>(i);
}

SubsetKind CountEngine::subsetKind() const {
  switch (setup_.mode) {
    case CountMode::Affine: return SubsetKind::Affine;
    case CountMode::Linear: return SubsetKind::Linear;
    case CountMode::Convex: return SubsetKind::Convex;
  }
  return SubsetKind::Affine;
}

IndexSubset CountEngine::assemble(const std::vector<int>& prefixIds, int probeId,
                                  int matchId) const {
  IndexSubset sub;
  sub.kind = subsetKind();
  sub.indices = prefixIds;
  if (probeId >= 0) sub.indices.push_back(probeId);
  sub.indices.push_back(matchId);
  std::sort(sub.indices.begin(), sub.indices.end());
  return sub;
}

std::vector<int> CountEngine::unrankPrefix(std::uint64_t ordinal) const {
  const int n = setup_.S->size();
  std::vector<int> available(n);
  for (int i = 0; i < n; ++i) available[i] = i;
  std::vector<int> out;
  std::uint64_t slotCount = prefixTotal_;
  for (int pos = 0; pos < prefixLen_; ++pos) {
    slotCount /= static_cast<std::uint64_t>(n - pos);
    const std::uint64_t digit = ordinal / slotCount;
    ordinal %= slotCount;
    out.push_back(available[digit]);
    available.erase(available.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return out;
}

template <class Fn>
void CountEngine::forEachProbe(const PrefixContext& ctx, Fn&& fn) const {
  if (probe_is_origin(setup_.mode, setup_.k)) {
    fn(-1);
    return;
  }
  for (int id : ctx.liveIds()) fn(id);
}

const CountResult& CountEngine::total() {
  if (counted_) return total_;
  const bool cacheSums = opts_.cachePrefixCounts;
  if (cacheSums) prefixSums_.assign(prefixTotal_, 0);

  std::uint64_t grand = 0;
  const int threads = std::max(1, opts_.threads);

  auto prefixWork = [&](std::uint64_t ordinal, const PrefixContext& ctx) {
    std::uint64_t sum = 0;
    forEachProbe(ctx, [&](int probe) { sum += ctx.countFor(probe); });
    if (cacheSums) prefixSums_[ordinal] = sum;
    return sum;
  };

  if (prefixTotal_ == 1) {
    soloCtx_.emplace(setup_, std::vector<int>{});
    const PrefixContext& ctx = *soloCtx_;
    if (threads > 1 && !probe_is_origin(setup_.mode, setup_.k) &&
        ctx.liveIds().size() > 256) {
      const std::vector<int>& live = ctx.liveIds();
      std::vector<std::uint64_t> partial(threads, 0);
      std::vector<std::exception_ptr> errors(threads);
      std::vector<std::thread> pool;
      const std::size_t chunk = (live.size() + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(live.size(), lo + chunk);
            std::uint64_t s = 0;
            for (std::size_t i = lo; i < hi; ++i) s += ctx.countFor(live[i]);
            partial[t] = s;
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
      for (std::uint64_t p : partial) grand += p;
      if (cacheSums) prefixSums_[0] = grand;
    } else {
      grand = prefixWork(0, ctx);
    }
  } else if (threads > 1 && prefixTotal_ >= 2 * static_cast<std::uint64_t>(threads)) {
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (prefixTotal_ + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          const std::uint64_t lo = t * chunk;
          const std::uint64_t hi = std::min(prefixTotal_, lo + chunk);
          std::uint64_t s = 0;
          for (std::uint64_t ord = lo; ord < hi; ++ord) {
            PrefixContext ctx(setup_, unrankPrefix(ord));
            s += prefixWork(ord, ctx);
          }
          partial[t] = s;
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (std::uint64_t p : partial) grand += p;
  } else {
    for (std::uint64_t ord = 0; ord < prefixTotal_; ++ord) {
      PrefixContext ctx(setup_, unrankPrefix(ord));
      grand += prefixWork(ord, ctx);
    }
  }

  total_.totalOrdered = grand;
  total_.multiplicity = factorial_u64(free_slots(setup_.mode, setup_.k));
  if (grand % total_.multiplicity != 0)
    throw NonDivisibleCount(
        "count: ordered total not divisible by the tuple multiplicity; "
        "input violates the general-position assumption");
  total_.totalUnordered = grand / total_.multiplicity;
  counted_ = true;
  return total_;
}

IndexSubset CountEngine::sampleOrdinal(std::uint64_t r) {
  for (std::uint64_t ord = 0; ord < prefixTotal_; ++ord) {
    if (!prefixSums_.empty() && prefixSums_[ord] <= r) {
      r -= prefixSums_[ord];
      continue;
    }
    const std::vector<int> prefixIds = unrankPrefix(ord);
    std::optional<PrefixContext> local;
    const PrefixContext& ctx =
        (prefixTotal_ == 1 && soloCtx_) ? *soloCtx_ : local.emplace(setup_, prefixIds);
    std::uint64_t rem = r;
    bool found = false;
    IndexSubset result;
    forEachProbe(ctx, [&](int probe) {
      if (found) return;
      const std::uint64_t c = ctx.countFor(probe);
      if (rem < c) {
        const std::vector<int> matches = ctx.matchesFor(probe);
        if (matches.size() != c)
          throw DegenerateInput("sample: rank-arc scan disagrees with the counting structure");
        result = assemble(prefixIds, probe, matches[rem]);
        found = true;
        return;
      }
      rem -= c;
    });
    if (found) return result;
    r = rem;
  }
  throw EmptyRange("sample: ordinal beyond the ordered total");
}

std::vector<IndexSubset> CountEngine::enumerateAll() {
  std::set<IndexSubset> unique;
  for (std::uint64_t ord = 0; ord < prefixTotal_; ++ord) {
    const std::vector<int> prefixIds = unrankPrefix(ord);
    std::optional<PrefixContext> local;
    const PrefixContext& ctx =
        (prefixTotal_ == 1 && soloCtx_) ? *soloCtx_ : local.emplace(setup_, prefixIds);
    forEachProbe(ctx, [&](int probe) {
      for (int match : ctx.matchesFor(probe)) unique.insert(assemble(prefixIds, probe, match));
    });
  }
  return {unique.begin(), unique.end()};
}

// ---------------------------------------------------------------------------

namespace {

std::optional<LambdaHit> lambda_for_subset(const PointSet& S, std::span<const double> y,
                                           const std::vector<Vec>& faceDirs,
                                           const IndexSubset& sub, double tol) {
  if (sub.kind == SubsetKind::Convex) {
    std::vector<Vec> pts;
    pts.reserve(sub.indices.size());
    for (int id : sub.indices) pts.push_back(S.row(id));
    return lambda_of_target_convex(y, faceDirs, pts, tol);
  }
  return lambda_of_target(y, faceDirs, affine_hull(S, sub, tol), tol);
}

}  // namespace

std::optional<ShootOutcome> shoot_face(const PointSet& S, int k, std::span<const double> y,
                                       const std::vector<Vec>& faceDirs, double lambdaInit,
                                       CountMode mode, SplitRng& rng, const SearchOptions& opts,
                                       ShootTrace* trace) {
  const double tol = opts.policy.tolerance;
  double lambda = lambdaInit;
  // Counting happens a hair below the nominal lambda: the flat that defined
  // the current lambda touches the simplex boundary exactly, which would
  // otherwise be an angle tie for the strict counting scheme.  Candidates in
  // the skipped sliver are covered by the retained pivot, so the answer is
  // off by at most this relative amount.
  constexpr double kContactShrink = 1e-7;
  auto makeEngine = [&](double lam) {
    EngineSetup setup;
    setup.S = &S;
    setup.k = k;
    setup.delta = QuerySimplex{Vec(y.begin(), y.end()), faceDirs, lam * (1.0 - kContactShrink)};
    setup.mode = mode;
    setup.tol = tol;
    return CountEngine(std::move(setup), opts);
  };

  CountEngine eng = makeEngine(lambda);
  CountResult cnt = eng.total();
  if (trace) trace->steps.push_back({lambda, cnt.totalUnordered});
  if (cnt.totalUnordered == 0) return std::nullopt;

  std::optional<ShootOutcome> best;
  auto consider = [&](double lam, const IndexSubset& sub) {
    if (!best || lam < best->lambda || (lam == best->lambda && sub < best->subset))
      best = ShootOutcome{lam, sub};
  };

  int stalls = 0;
  while (cnt.totalUnordered > static_cast<std::uint64_t>(opts.enumerationCutoff)) {
    const IndexSubset pivot = eng.sampleOrdinal(rng.nextBelow(cnt.totalOrdered));
    const auto hit = lambda_for_subset(S, y, faceDirs, pivot, tol);
    if (!hit) break;  // inconsistent at tolerance; enumerate what is left
    consider(hit->lambda, pivot);
    if (hit->lambda >= lambda * (1.0 - 1e-12)) {
      if (++stalls >= 3) break;  // near-tie plateau, enumeration takes over
    } else {
      stalls = 0;
    }
    lambda = std::min(lambda, hit->lambda);
    eng = makeEngine(lambda);
    cnt = eng.total();
    if (trace) trace->steps.push_back({lambda, cnt.totalUnordered});
    if (cnt.totalUnordered == 0) break;
  }

  if (cnt.totalUnordered > 0) {
    for (const IndexSubset& sub : eng.enumerateAll()) {
      const auto hit = lambda_for_subset(S, y, faceDirs, sub, tol);
      if (hit) consider(hit->lambda, sub);
    }
  }
  return best;
}

FaceSweepOutcome best_over_faces(const PointSet& S, int k, std::span<const double> y,
                                 const ApproxPolytope& Q, double lambdaInit, CountMode mode,
                                 SplitRng& rng, const SearchOptions& opts) {
  FaceSweepOutcome out;
  out.lambda = lambdaInit;
  const auto& faces = Q.faces(Q.dim - k);
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    SplitRng faceRng = rng.split(fi);
    const auto r = shoot_face(S, k, y, Q.faceDirections(faces[fi]), out.lambda, mode, faceRng,
                              opts, nullptr);
    if (!r) continue;
    if (!out.improved || r->lambda < out.lambda ||
        (r->lambda == out.lambda && r->subset < out.subset)) {
      out.improved = true;
      out.lambda = r->lambda;
      out.subset = r->subset;
    }
  }
  return out;
}

}  // namespace induced::detail
