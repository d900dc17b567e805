#include "induced/hyperplane_exact.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "induced/geometry.hpp"

namespace induced {

namespace {

// A dual line y = m x - c with a scale-aware sign predicate.
struct Line2 {
  double m = 0.0, c = 0.0;
  int id = -1;

  double value(const Vec& p) const { return m * p[0] - c - p[1]; }
  int sign(const Vec& p) const {
    const double v = value(p);
    const double eps = 1e-12 * (std::abs(m * p[0]) + std::abs(c) + std::abs(p[1]) + 1.0);
    if (std::abs(v) <= eps) return 0;
    return v > 0.0 ? 1 : -1;
  }
};

// Convex cell of a partial arrangement.  Vertices carry the ids of the two
// input lines meeting there (-1 for clip boundaries and fan diagonals);
// edges carry the id of the line they lie on.
struct Region {
  std::vector<Vec> verts;  // CCW
  std::vector<std::pair<int, int>> vertProv;
  std::vector<int> edgeSrc;  // edge i joins verts[i] and verts[i+1 mod n]

  bool crossedBy(const Line2& l) const {  // inclusive: touching counts
    bool lo = false, hi = false;
    for (const Vec& v : verts) {
      const int s = l.sign(v);
      lo |= s <= 0;
      hi |= s >= 0;
    }
    return lo && hi;
  }
  bool strictlyCrossedBy(const Line2& l) const {
    bool lo = false, hi = false;
    for (const Vec& v : verts) {
      const int s = l.sign(v);
      lo |= s < 0;
      hi |= s > 0;
    }
    return lo && hi;
  }
};

Vec intersect_edge(const Line2& l, const Vec& a, const Vec& b) {
  const double va = l.value(a), vb = l.value(b);
  const double t = va / (va - vb);
  return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
}

// Splits a convex cell along a line.  Cells with no interior on a side yield
// nothing for that side.
void split_region(const Region& cell, const Line2& l, std::vector<Region>& out) {
  const std::size_t n = cell.verts.size();
  std::vector<int> sg(n);
  bool anyLo = false, anyHi = false;
  for (std::size_t i = 0; i < n; ++i) {
    sg[i] = l.sign(cell.verts[i]);
    anyLo |= sg[i] < 0;
    anyHi |= sg[i] > 0;
  }
  if (!anyLo || !anyHi) {
    out.push_back(cell);
    return;
  }
  Region below, above;
  auto push = [](Region& r, const Vec& v, std::pair<int, int> prov, int leavingSrc) {
    r.verts.push_back(v);
    r.vertProv.push_back(prov);
    r.edgeSrc.push_back(leavingSrc);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const int si = sg[i], sj = sg[j];
    if (si <= 0)
      push(below, cell.verts[i], cell.vertProv[i],
           (sj <= 0 || si == 0) ? (sj > 0 ? l.id : cell.edgeSrc[i]) : cell.edgeSrc[i]);
    if (si >= 0)
      push(above, cell.verts[i], cell.vertProv[i],
           (sj >= 0 || si == 0) ? (sj < 0 ? l.id : cell.edgeSrc[i]) : cell.edgeSrc[i]);
    if (si * sj < 0) {
      const Vec x = intersect_edge(l, cell.verts[i], cell.verts[j]);
      const std::pair<int, int> prov{cell.edgeSrc[i], l.id};
      if (si < 0) {  // leaving the lower side: cut edge continues along l
        push(below, x, prov, l.id);
        push(above, x, prov, cell.edgeSrc[i]);
      } else {  // entering the lower side
        push(below, x, prov, cell.edgeSrc[i]);
        push(above, x, prov, l.id);
      }
    }
  }
  if (below.verts.size() >= 3) out.push_back(std::move(below));
  if (above.verts.size() >= 3) out.push_back(std::move(above));
}

std::vector<Region> arrangement_cells(const Region& clip, const std::vector<Line2>& lines) {
  std::vector<Region> cells{clip};
  for (const Line2& l : lines) {
    std::vector<Region> next;
    next.reserve(cells.size() + 8);
    for (const Region& c : cells) split_region(c, l, next);
    cells = std::move(next);
  }
  return cells;
}

// Fan triangulation from the lexicographically lowest vertex.
std::vector<Region> bottom_vertex_triangles(const Region& cell) {
  const std::size_t n = cell.verts.size();
  if (n == 3) return {cell};
  std::size_t b = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const Vec &vi = cell.verts[i], &vb = cell.verts[b];
    if (vi[1] < vb[1] || (vi[1] == vb[1] && vi[0] < vb[0])) b = i;
  }
  std::vector<Region> tris;
  tris.reserve(n - 2);
  for (std::size_t s = 1; s + 1 < n; ++s) {
    const std::size_t i = (b + s) % n, j = (b + s + 1) % n;
    Region t;
    t.verts = {cell.verts[b], cell.verts[i], cell.verts[j]};
    t.vertProv = {cell.vertProv[b], cell.vertProv[i], cell.vertProv[j]};
    t.edgeSrc = {s == 1 ? cell.edgeSrc[b] : -1, cell.edgeSrc[i],
                 s + 2 == n ? cell.edgeSrc[j] : -1};
    tris.push_back(std::move(t));
  }
  return tris;
}

Region box_region(double radius) {
  Region r;
  r.verts = {{-radius, -radius}, {radius, -radius}, {radius, radius}, {-radius, radius}};
  r.vertProv.assign(4, {-1, -1});
  r.edgeSrc.assign(4, -1);
  return r;
}

struct ZoneCollector {
  std::set<std::pair<int, int>> unique;
  std::uint64_t emitted = 0;

  void corner(std::pair<int, int> prov) {
    ++emitted;
    if (prov.first < 0 || prov.second < 0 || prov.first == prov.second) return;
    if (prov.first > prov.second) std::swap(prov.first, prov.second);
    unique.emplace(prov);
  }
  void pair(int a, int b) {
    ++emitted;
    if (a > b) std::swap(a, b);
    unique.emplace(a, b);
  }
};

struct BuiltCell {
  Region tri;
  std::vector<int> conflicts;  // ids into the global line list
};

// Sampled cutting with per-cell refinement: any cell whose strict conflict
// list exceeds the budget is re-split by a secondary sample drawn from its
// own conflicts.  Clipped boundary wedges can legitimately be crossed by many
// lines, so refinement (rather than global resampling) is what makes the
// 1/r property reachable.  Conflict lists are strict-crossing lists.
void refined_cutting(const std::vector<Line2>& lines, const std::vector<int>& subset,
                     const Region& clip, double budget, int r, SplitRng& rng, int depth,
                     std::vector<BuiltCell>& out) {
  if (depth > 24) throw CuttingFailure("cutting: refinement depth guard tripped");
  const int n = static_cast<int>(subset.size());
  const int sampleSize =
      std::min(n, std::max(2 * r, static_cast<int>(std::ceil(2.0 * r * std::log(r + 1.0)))));

  std::vector<int> pool = subset;
  std::vector<Line2> sampleLines;
  for (int i = 0; i < sampleSize; ++i) {
    const std::size_t j = i + rng.nextBelow(pool.size() - i);
    std::swap(pool[i], pool[j]);
    sampleLines.push_back(lines[pool[i]]);
  }

  for (const Region& cell : arrangement_cells(clip, sampleLines)) {
    for (Region& tri : bottom_vertex_triangles(cell)) {
      std::vector<int> conf;
      for (int id : subset)
        if (tri.strictlyCrossedBy(lines[id])) conf.push_back(id);
      if (static_cast<double>(conf.size()) <= budget || n == sampleSize) {
        out.push_back({std::move(tri), std::move(conf)});
      } else {
        refined_cutting(lines, conf, tri, budget, r, rng, depth + 1, out);
      }
    }
  }
}

void collect_zone(const std::vector<Line2>& lines, const std::vector<int>& subset,
                  const Line2& query, const Region& clip, const HyperplaneExactOptions& opts,
                  SplitRng& rng, ZoneCollector& out, int depth) {
  const int n = static_cast<int>(subset.size());
  if (depth > 64) throw CuttingFailure("refined zone: recursion depth guard tripped");

  if (n <= opts.baseSize) {
    // Full arrangement of the few remaining lines: the crossed triangles are
    // the refined zone itself.  All pairs are emitted as well so that base
    // vertices sitting exactly on cell boundaries cannot be lost.
    std::vector<Line2> local;
    local.reserve(n);
    for (int id : subset) local.push_back(lines[id]);
    for (const Region& cell : arrangement_cells(clip, local))
      for (const Region& tri : bottom_vertex_triangles(cell))
        if (tri.crossedBy(query))
          for (const auto& prov : tri.vertProv) out.corner(prov);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(lines[subset[i]].m - lines[subset[j]].m) > 1e-300)
          out.pair(subset[i], subset[j]);
    return;
  }

  std::vector<BuiltCell> cells;
  refined_cutting(lines, subset, clip, static_cast<double>(n) / opts.cuttingR, opts.cuttingR,
                  rng, 0, cells);
  for (const BuiltCell& cell : cells) {
    if (!cell.tri.crossedBy(query)) continue;
    for (const auto& prov : cell.tri.vertProv) out.corner(prov);
    // Recurse on the inclusive conflict list: lines touching the cell
    // boundary carry vertices that must survive into the subproblem.
    std::vector<int> inclusive;
    for (int id : subset)
      if (cell.tri.crossedBy(lines[id])) inclusive.push_back(id);
    if (!inclusive.empty())
      collect_zone(lines, inclusive, query, cell.tri, opts, rng, out, depth + 1);
  }
}

// Small dense orthogonal rotation (QR of a Gaussian matrix).
std::vector<Vec> random_rotation(int d, SplitRng& rng) {
  std::vector<Vec> R(d, Vec(d));
  for (auto& row : R)
    for (double& x : row) x = rng.nextGaussian();
  for (int i = 0; i < d; ++i) {
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < i; ++j) axpy(R[i], -dot(R[i], R[j]), R[j]);
    normalize_inplace(R[i]);
  }
  return R;
}

Vec apply_rotation(const std::vector<Vec>& R, std::span<const double> p) {
  Vec out(R.size());
  for (std::size_t i = 0; i < R.size(); ++i) out[i] = dot(R[i], p);
  return out;
}

}  // namespace

DualHyperplane dualize_point(std::span<const double> p, int sourceId) {
  const std::size_t d = p.size();
  DualHyperplane h;
  h.slope.assign(p.begin(), p.end() - 1);
  h.offset = p[d - 1];
  h.sourceId = sourceId;
  return h;
}

std::vector<DualHyperplane> dualize(const PointSet& S) {
  std::vector<DualHyperplane> out;
  out.reserve(S.size());
  for (int id = 0; id < S.size(); ++id) out.push_back(dualize_point(S[id], id));
  return out;
}

Vec dual_to_point(const DualHyperplane& h) {
  Vec p = h.slope;
  p.push_back(h.offset);
  return p;
}

double arrangement_box_radius(const std::vector<DualHyperplane>& lines) {
  double maxM = 0.0, maxC = 0.0;
  std::vector<double> slopes;
  slopes.reserve(lines.size());
  for (const auto& l : lines) {
    maxM = std::max(maxM, std::abs(l.slope[0]));
    maxC = std::max(maxC, std::abs(l.offset));
    slopes.push_back(l.slope[0]);
  }
  std::sort(slopes.begin(), slopes.end());
  double minGap = 0.0;
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    const double g = slopes[i] - slopes[i - 1];
    if (g > 1e-300 && (minGap == 0.0 || g < minGap)) minGap = g;
  }
  if (minGap == 0.0) return 4.0 * (maxC + 1.0);  // all slopes equal: no vertices
  const double xBound = 2.0 * maxC / minGap + 1.0;
  const double yBound = maxM * xBound + maxC;
  return std::min(1e12, 2.0 * std::max({xBound, yBound, 1.0}));
}

Cutting2 build_cutting2(const std::vector<DualHyperplane>& dual, int r, double boxRadius,
                        SplitRng& rng, int maxRetries) {
  if (r <= 1) throw Error("build_cutting2: r must exceed 1");
  std::vector<Line2> lines;
  lines.reserve(dual.size());
  for (std::size_t i = 0; i < dual.size(); ++i)
    lines.push_back({dual[i].slope[0], dual[i].offset, static_cast<int>(i)});
  const int n = static_cast<int>(lines.size());
  const Region box = box_region(boxRadius);

  Cutting2 cut;
  cut.boxRadius = boxRadius;

  auto toCell = [&](const Region& tri, std::vector<int> conf) {
    CutCell cell;
    cell.verts = tri.verts;
    cell.vertProv = tri.vertProv;
    cell.conflicts = std::move(conf);
    return cell;
  };

  if (n <= std::max(2 * r, 8)) {  // base case: one cell, full conflict list
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    cut.cells.push_back(toCell(box, all));
    return cut;
  }

  const double budget = static_cast<double>(n) / r;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  for (int attempt = 0; attempt < maxRetries; ++attempt) {
    try {
      std::vector<BuiltCell> cells;
      refined_cutting(lines, all, box, budget, r, rng, 0, cells);
      bool ok = true;
      for (const BuiltCell& c : cells)
        if (static_cast<double>(c.conflicts.size()) > budget) ok = false;
      if (!ok) continue;
      cut.cells.reserve(cells.size());
      for (BuiltCell& c : cells) {
        CutCell out;
        out.verts = std::move(c.tri.verts);
        out.vertProv = std::move(c.tri.vertProv);
        out.conflicts = std::move(c.conflicts);
        cut.cells.push_back(std::move(out));
      }
      return cut;
    } catch (const CuttingFailure&) {
      continue;  // depth guard tripped; a fresh sample usually clears it
    }
  }
  throw CuttingFailure("build_cutting2: no valid cutting after retries");
}

RefinedZoneResult refined_zone_vertices(const DualHyperplane& queryDual,
                                        const std::vector<DualHyperplane>& dual,
                                        const HyperplaneExactOptions& opts, SplitRng& rng) {
  if (dual.empty()) return {};
  if (dual[0].slope.size() != 1)
    throw UnsupportedDim("refined_zone_vertices: only the planar case is implemented");
  std::vector<Line2> lines;
  lines.reserve(dual.size());
  for (std::size_t i = 0; i < dual.size(); ++i)
    lines.push_back({dual[i].slope[0], dual[i].offset, static_cast<int>(i)});
  std::vector<DualHyperplane> withQuery = dual;
  withQuery.push_back(queryDual);
  const double radius = arrangement_box_radius(withQuery);
  const Line2 query{queryDual.slope[0], queryDual.offset, -1};

  std::vector<int> all(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) all[i] = static_cast<int>(i);

  ZoneCollector collector;
  collect_zone(lines, all, query, box_region(radius), opts, rng, collector, 0);

  RefinedZoneResult res;
  res.emitted = collector.emitted;
  res.candidates.reserve(collector.unique.size());
  for (const auto& [a, b] : collector.unique) res.candidates.push_back({a, b});
  return res;
}

NearestHyperplaneResult nearest_hyperplane_exact(const PointSet& S, std::span<const double> y,
                                                 const HyperplaneExactOptions& opts) {
  const int d = S.dim();
  const int n = S.size();
  if (static_cast<int>(y.size()) != d)
    throw DimensionMismatch("nearest_hyperplane_exact: query dimension mismatch");
  if (n < d) throw DimensionMismatch("nearest_hyperplane_exact: need at least d points");
  if (d != 2 && !(d == 3 && opts.enableD3))
    throw UnsupportedDim("nearest_hyperplane_exact: supported for d=2 (d=3 experimental)");
  if (d == 3)
    throw UnsupportedDim("nearest_hyperplane_exact: the d=3 cutting path is not built yet");

  SplitRng rng(opts.policy.seed ^ 0x7c15bf4a9e3779b9ull);
  // A random rotation removes vertical-duality degeneracies; distances are
  // evaluated on the original coordinates afterwards.
  const std::vector<Vec> R = random_rotation(d, rng);
  std::vector<Vec> rows;
  rows.reserve(n);
  for (int id = 0; id < n; ++id) rows.push_back(apply_rotation(R, S[id]));
  const PointSet rotated = PointSet::fromRows(d, rows);
  const Vec yRot = apply_rotation(R, y);

  const std::vector<DualHyperplane> dualLines = dualize(rotated);
  const DualHyperplane yDual = dualize_point(yRot, -1);

  SplitRng zoneRng = rng.split(1);
  const RefinedZoneResult zone = refined_zone_vertices(yDual, dualLines, opts, zoneRng);

  NearestHyperplaneResult res;
  res.candidatesExamined = zone.candidates.size();
  double best = -1.0;
  Projection bestProj;
  const double tol = opts.policy.tolerance;
  for (const auto& cand : zone.candidates) {
    IndexSubset sub;
    sub.kind = SubsetKind::Affine;
    sub.indices = cand;
    std::sort(sub.indices.begin(), sub.indices.end());
    Projection proj;
    try {
      proj = dist_point_to_flat(y, affine_hull(S, sub, tol));
    } catch (const DegenerateInput&) {
      continue;  // coincident pair after rotation round-off; not a hyperplane
    }
    if (best < 0.0 || proj.distance < best ||
        (proj.distance == best && sub.indices < res.subset.indices)) {
      best = proj.distance;
      res.subset = sub;
      bestProj = proj;
    }
  }
  if (best < 0.0)
    throw DegenerateInput("nearest_hyperplane_exact: no candidate spans a hyperplane");
  res.distance = best;
  res.foot = bestProj.foot;

  const double scale = std::max(S.scale(), 1.0);
  for (const auto& cand : zone.candidates) {
    IndexSubset sub;
    sub.kind = SubsetKind::Affine;
    sub.indices = cand;
    std::sort(sub.indices.begin(), sub.indices.end());
    if (sub.indices == res.subset.indices) continue;
    try {
      const double dist = dist_point_to_flat(y, affine_hull(S, sub, tol)).distance;
      if (std::abs(dist - best) <= tol * scale) res.ties.push_back(sub);
    } catch (const DegenerateInput&) {
    }
  }
  std::sort(res.ties.begin(), res.ties.end());
  return res;
}

}  // namespace induced
