#include "induced/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "induced/geometry.hpp"
#include "induced/linprog.hpp"
#include "induced/rng.hpp"

namespace induced {

namespace {

constexpr double kHullEps = 1e-12;

// Facet plane through the given unit vertices, oriented away from `interior`.
PolytopeFacet make_facet(const std::vector<Vec>& verts, std::vector<int> ids,
                         const Vec& interior) {
  Vec h = hyperplane_through([&] {
    std::vector<Vec> pts;
    pts.reserve(ids.size());
    for (int id : ids) pts.push_back(verts[id]);
    return pts;
  }(), 1e-12);
  const int d = static_cast<int>(interior.size());
  Vec n(h.begin(), h.begin() + d);
  double offset = -h[d];
  if (dot(n, interior) > offset) {
    for (double& x : n) x = -x;
    offset = -offset;
  }
  std::sort(ids.begin(), ids.end());
  return {std::move(ids), std::move(n), offset};
}

// Incremental convex hull over points in strictly convex position (all on the
// unit sphere, jittered).  Used for d >= 4 where no closed-form net exists.
struct HullBuilder {
  int d;
  std::vector<Vec> pts;
  Vec interior;
  std::vector<PolytopeFacet> facets;
  std::vector<char> alive;

  explicit HullBuilder(int dim) : d(dim) {}

  void initFromSeeds(const std::vector<Vec>& seeds) {
    // First d+1 affinely independent seeds form the starting simplex.
    std::vector<int> simplex;
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < seeds.size() && simplex.size() < static_cast<std::size_t>(d) + 1;
         ++i) {
      if (simplex.empty()) {
        simplex.push_back(static_cast<int>(i));
        continue;
      }
      Vec v = sub(seeds[i], seeds[simplex[0]]);
      const double orig = norm2(v);
      for (int pass = 0; pass < 2; ++pass)
        for (const Vec& b : basis) axpy(v, -dot(v, b), b);
      if (norm2(v) > 1e-7 * std::max(orig, 1e-300)) {
        normalize_inplace(v);
        basis.push_back(std::move(v));
        simplex.push_back(static_cast<int>(i));
      }
    }
    if (simplex.size() != static_cast<std::size_t>(d) + 1)
      throw Error("polytope hull: could not seed an initial simplex");

    interior.assign(d, 0.0);
    for (int id : simplex) axpy(interior, 1.0 / (d + 1), seeds[id]);
    for (int id : simplex) pts.push_back(seeds[id]);
    for (int skip = 0; skip <= d; ++skip) {
      std::vector<int> ids;
      for (int i = 0; i <= d; ++i)
        if (i != skip) ids.push_back(i);
      facets.push_back(make_facet(pts, ids, interior));
      alive.push_back(1);
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      if (std::find(simplex.begin(), simplex.end(), static_cast<int>(i)) == simplex.end())
        insert(seeds[i]);
    }
  }

  bool insert(const Vec& p) {
    std::vector<int> visible;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (alive[f] && dot(facets[f].normal, p) - facets[f].offset > kHullEps)
        visible.push_back(static_cast<int>(f));
    if (visible.empty()) return false;

    std::map<std::vector<int>, int> ridgeCount;
    for (int f : visible) {
      const auto& vs = facets[f].vertexIds;
      for (std::size_t skip = 0; skip < vs.size(); ++skip) {
        std::vector<int> ridge;
        for (std::size_t i = 0; i < vs.size(); ++i)
          if (i != skip) ridge.push_back(vs[i]);
        ++ridgeCount[ridge];
      }
    }
    const int newId = static_cast<int>(pts.size());
    pts.push_back(p);
    for (int f : visible) alive[f] = 0;
    for (auto& [ridge, count] : ridgeCount) {
      if (count != 1) continue;  // interior to the visible region
      std::vector<int> ids = ridge;
      ids.push_back(newId);
      facets.push_back(make_facet(pts, std::move(ids), interior));
      alive.push_back(1);
    }
    return true;
  }

  double minOffset() const {
    double m = 2.0;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (alive[f]) m = std::min(m, facets[f].offset);
    return m;
  }

  int worstFacet() const {
    int best = -1;
    double m = 2.0;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (alive[f] && facets[f].offset < m) {
        m = facets[f].offset;
        best = static_cast<int>(f);
      }
    return best;
  }
};

void append_alive(const HullBuilder& hb, ApproxPolytope& Q) {
  Q.vertices = hb.pts;
  for (std::size_t f = 0; f < hb.facets.size(); ++f)
    if (hb.alive[f]) Q.facets.push_back(hb.facets[f]);
}

ApproxPolytope build_polygon(double eps) {
  const double target = 1.0 / (1.0 + eps);
  int m = std::max(4, static_cast<int>(std::ceil(M_PI / std::acos(target))));
  if (m % 2) ++m;
  ApproxPolytope Q;
  Q.dim = 2;
  Q.epsilon = eps;
  for (int i = 0; i < m; ++i) {
    const double a = 2.0 * M_PI * i / m;
    Q.vertices.push_back({std::cos(a), std::sin(a)});
  }
  const Vec origin{0.0, 0.0};
  for (int i = 0; i < m; ++i)
    Q.facets.push_back(make_facet(Q.vertices, {i, (i + 1) % m}, origin));
  return Q;
}

std::vector<std::array<int, 3>> icosahedron(std::vector<Vec>& verts) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double pattern[12][3] = {{0, 1, phi},  {0, -1, phi},  {0, 1, -phi}, {0, -1, -phi},
                                 {1, phi, 0},  {-1, phi, 0},  {1, -phi, 0}, {-1, -phi, 0},
                                 {phi, 0, 1},  {-phi, 0, 1},  {phi, 0, -1}, {-phi, 0, -1}};
  for (auto& p : pattern) {
    Vec v{p[0], p[1], p[2]};
    normalize_inplace(v);
    verts.push_back(std::move(v));
  }
  // Faces = triples of mutually nearest vertices (edge length is the minimum
  // pairwise distance of the solid).
  double minD = 10.0;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) minD = std::min(minD, dist2(verts[i], verts[j]));
  auto adjacent = [&](int i, int j) { return dist2(verts[i], verts[j]) < minD * 1.2; };
  std::vector<std::array<int, 3>> faces;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j)
      for (int k = j + 1; k < 12; ++k)
        if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k)) faces.push_back({i, j, k});
  return faces;
}

ApproxPolytope build_geodesic(double eps) {
  const double target = 1.0 / (1.0 + eps);
  for (int level = 0; level <= 8; ++level) {
    std::vector<Vec> verts;
    std::vector<std::array<int, 3>> tris = icosahedron(verts);
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec v = add(verts[a], verts[b]);
      normalize_inplace(v);
      verts.push_back(std::move(v));
      const int id = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    for (int l = 0; l < level; ++l) {
      std::vector<std::array<int, 3>> next;
      next.reserve(tris.size() * 4);
      for (const auto& t : tris) {
        const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
        next.push_back({t[0], ab, ca});
        next.push_back({t[1], bc, ab});
        next.push_back({t[2], ca, bc});
        next.push_back({ab, bc, ca});
      }
      tris = std::move(next);
    }
    ApproxPolytope Q;
    Q.dim = 3;
    Q.epsilon = eps;
    Q.vertices = verts;
    const Vec origin{0.0, 0.0, 0.0};
    double minOffset = 2.0;
    for (const auto& t : tris) {
      Q.facets.push_back(make_facet(Q.vertices, {t[0], t[1], t[2]}, origin));
      minOffset = std::min(minOffset, Q.facets.back().offset);
    }
    if (minOffset >= target) return Q;
  }
  throw Error("polytope: geodesic refinement exceeded the subdivision cap");
}

ApproxPolytope build_refined_hull(int d, double eps) {
  const double target = 1.0 / (1.0 + eps);
  // Deterministic jitter breaks the ties a symmetric seed set would create.
  SplitRng rng(0x51ed270b0a9f31c5ull ^ (static_cast<std::uint64_t>(d) << 32) ^
               static_cast<std::uint64_t>(eps * 1e9));
  auto jittered = [&](Vec v) {
    for (double& x : v) x += rng.nextDouble(-1e-7, 1e-7);
    normalize_inplace(v);
    return v;
  };

  std::vector<Vec> seeds;
  for (int i = 0; i < d; ++i) {
    Vec e(d, 0.0);
    e[i] = 1.0;
    seeds.push_back(jittered(e));
    e[i] = -1.0;
    seeds.push_back(jittered(e));
  }
  HullBuilder hb(d);
  hb.initFromSeeds(seeds);

  const std::size_t insertionCap = 300000;
  while (hb.minOffset() < target) {
    if (hb.pts.size() > insertionCap)
      throw Error("polytope: facet refinement exceeded the insertion cap");
    const int f = hb.worstFacet();
    if (!hb.insert(jittered(hb.facets[f].normal)))
      throw Error("polytope: refinement direction not visible from its facet");
  }

  ApproxPolytope Q;
  Q.dim = d;
  Q.epsilon = eps;
  append_alive(hb, Q);
  return Q;
}

void certify(const ApproxPolytope& Q) {
  const double target = 1.0 / (1.0 + Q.epsilon);
  for (const Vec& v : Q.vertices)
    if (norm2(v) > 1.0 + 1e-12) throw Error("polytope certificate: vertex outside unit ball");
  std::map<std::vector<int>, int> ridges;
  for (const auto& f : Q.facets) {
    if (f.offset < target - 1e-12)
      throw Error("polytope certificate: facet offset below 1/(1+eps)");
    for (const Vec& v : Q.vertices)
      if (dot(f.normal, v) > f.offset + 1e-9)
        throw Error("polytope certificate: boundary not locally convex");
    for (std::size_t skip = 0; skip < f.vertexIds.size(); ++skip) {
      std::vector<int> ridge;
      for (std::size_t i = 0; i < f.vertexIds.size(); ++i)
        if (i != skip) ridge.push_back(f.vertexIds[i]);
      ++ridges[ridge];
    }
  }
  for (const auto& [ridge, count] : ridges)
    if (count != 2) throw Error("polytope certificate: boundary not closed at a ridge");
  const double bound = ApproxPolytope::vertexBoundConstant(Q.dim) *
                       std::pow(Q.epsilon, -(Q.dim - 1) / 2.0);
  if (static_cast<double>(Q.vertices.size()) > bound)
    throw Error("polytope certificate: vertex count exceeds the documented bound");
}

}  // namespace

double ApproxPolytope::vertexBoundConstant(int d) {
  // Calibrated against the constructions in this file; generous by >=2x.
  static const double table[9] = {0, 0, 8.0, 24.0, 64.0, 256.0, 1024.0, 4096.0, 16384.0};
  return table[d];
}

void ApproxPolytope::buildFaceIndex() {
  faceIndex_.assign(dim, {});
  for (int j = 0; j < dim; ++j) {
    std::set<std::vector<int>> unique;
    std::vector<int> pick(j + 1);
    for (const auto& f : facets) {
      const int fs = static_cast<int>(f.vertexIds.size());
      // All (j+1)-subsets of the facet simplex.
      std::vector<int> idx(j + 1);
      for (int i = 0; i <= j; ++i) idx[i] = i;
      while (true) {
        for (int i = 0; i <= j; ++i) pick[i] = f.vertexIds[idx[i]];
        unique.insert(pick);
        int pos = j;
        while (pos >= 0 && idx[pos] == fs - (j + 1) + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i <= j; ++i) idx[i] = idx[i - 1] + 1;
      }
    }
    faceIndex_[j].assign(unique.begin(), unique.end());
  }
}

const std::vector<std::vector<int>>& ApproxPolytope::faces(int j) const {
  return faceIndex_.at(j);
}

std::vector<Vec> ApproxPolytope::faceDirections(const std::vector<int>& face) const {
  std::vector<Vec> dirs;
  dirs.reserve(face.size());
  for (int id : face) dirs.push_back(vertices[id]);
  return dirs;
}

double ApproxPolytope::gauge(std::span<const double> y, std::span<const double> v) const {
  Vec rel = sub(v, y);
  double g = 0.0;
  for (const auto& f : facets) g = std::max(g, dot(f.normal, rel) / f.offset);
  return g;
}

ApproxPolytope build_polytope(int d, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw InvalidEpsilon("build_polytope: epsilon must lie in (0, 1]");
  if (d < 2 || d > 8) throw UnsupportedDim("build_polytope: dimension must lie in [2, 8]");
  ApproxPolytope Q;
  if (d == 2)
    Q = build_polygon(epsilon);
  else if (d == 3)
    Q = build_geodesic(epsilon);
  else
    Q = build_refined_hull(d, epsilon);
  certify(Q);
  Q.buildFaceIndex();
  return Q;
}

std::vector<Vec> QuerySimplex::vertexList() const {
  std::vector<Vec> out;
  out.reserve(faceDirs.size() + 1);
  out.push_back(apex);
  for (const Vec& dir : faceDirs) {
    Vec v = apex;
    axpy(v, lambda, dir);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<LambdaHit> lambda_of_target(std::span<const double> y,
                                          const std::vector<Vec>& faceDirs,
                                          const AffineFlat& target, double) {
  const int d = static_cast<int>(y.size());
  const int q = static_cast<int>(faceDirs.size());
  const int w = static_cast<int>(target.basis.size());
  // Columns: s_0..s_{q-1}, then t_j split into positive/negative parts.
  std::vector<Vec> rows(d, Vec(q + 2 * w, 0.0));
  Vec b(d);
  for (int r = 0; r < d; ++r) {
    for (int i = 0; i < q; ++i) rows[r][i] = faceDirs[i][r];
    for (int j = 0; j < w; ++j) {
      rows[r][q + 2 * j] = -target.basis[j][r];
      rows[r][q + 2 * j + 1] = target.basis[j][r];
    }
    b[r] = target.base[r] - y[r];
  }
  Vec c(q + 2 * w, 0.0);
  for (int i = 0; i < q; ++i) c[i] = 1.0;
  LpResult lp = solve_lp(rows, b, c);
  if (lp.status != LpStatus::Optimal) return std::nullopt;
  LambdaHit hit;
  hit.lambda = lp.objective;
  hit.point.assign(y.begin(), y.end());
  for (int i = 0; i < q; ++i) axpy(hit.point, lp.x[i], faceDirs[i]);
  return hit;
}

std::optional<LambdaHit> lambda_of_target_convex(std::span<const double> y,
                                                 const std::vector<Vec>& faceDirs,
                                                 const std::vector<Vec>& pts, double) {
  const int d = static_cast<int>(y.size());
  const int q = static_cast<int>(faceDirs.size());
  const int p = static_cast<int>(pts.size());
  std::vector<Vec> rows(d + 1, Vec(q + p, 0.0));
  Vec b(d + 1);
  for (int r = 0; r < d; ++r) {
    for (int i = 0; i < q; ++i) rows[r][i] = faceDirs[i][r];
    for (int j = 0; j < p; ++j) rows[r][q + j] = -pts[j][r];
    b[r] = -y[r];
  }
  for (int j = 0; j < p; ++j) rows[d][q + j] = 1.0;
  b[d] = 1.0;
  Vec c(q + p, 0.0);
  for (int i = 0; i < q; ++i) c[i] = 1.0;
  LpResult lp = solve_lp(rows, b, c);
  if (lp.status != LpStatus::Optimal) return std::nullopt;
  LambdaHit hit;
  hit.lambda = lp.objective;
  hit.point.assign(y.begin(), y.end());
  for (int i = 0; i < q; ++i) axpy(hit.point, lp.x[i], faceDirs[i]);
  return hit;
}

}  // namespace induced
