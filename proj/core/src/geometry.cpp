#include "induced/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "induced/rng.hpp"

namespace induced {

namespace {

// Remove the components of v along each (orthonormal) basis vector.  Two
// passes keep the residual orthogonal to working precision.
void project_out(Vec& v, const std::vector<Vec>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& b : basis) axpy(v, -dot(v, b), b);
  }
}

}  // namespace

Side side_of_hyperplane(std::span<const double> h, std::span<const double> p, double tol) {
  const std::size_t d = p.size();
  if (h.size() != d + 1) throw DimensionMismatch("side_of_hyperplane: h must have d+1 entries");
  double nn = 0.0;
  for (std::size_t i = 0; i < d; ++i) nn += h[i] * h[i];
  if (nn == 0.0) throw ZeroNormal("side_of_hyperplane: normal part is all zeros");
  const double value = dot(h.first(d), p) + h[d];
  const double scale = std::sqrt(nn) * (1.0 + norm2(p));
  if (std::abs(value) <= tol * scale) return Side::On;
  return value > 0.0 ? Side::Above : Side::Below;
}

AffineFlat affine_hull_of(const std::vector<Vec>& pts, double tol) {
  if (pts.empty()) throw DegenerateInput("affine_hull: empty point list");
  AffineFlat F;
  F.base = pts[0];
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Vec v = sub(pts[i], F.base);
    const double orig = norm2(v);
    project_out(v, F.basis);
    if (norm2(v) <= tol * std::max(orig, 1e-300))
      throw DegenerateInput("affine_hull: points affinely dependent at tolerance");
    normalize_inplace(v);
    F.basis.push_back(std::move(v));
  }
  return F;
}

AffineFlat affine_hull(const PointSet& S, const IndexSubset& A, double tol) {
  std::vector<Vec> pts;
  if (A.kind == SubsetKind::Linear) pts.push_back(Vec(S.dim(), 0.0));
  for (int id : A.indices) pts.push_back(S.row(id));
  AffineFlat F = affine_hull_of(pts, tol);
  F.source = A;
  return F;
}

Vec hyperplane_through(const std::vector<Vec>& pts, double tol) {
  const std::size_t d = pts[0].size();
  if (pts.size() != d) throw DimensionMismatch("hyperplane_through: needs exactly d points");
  AffineFlat F = affine_hull_of(pts, tol);
  // Normal = largest residual of a coordinate direction against the basis.
  Vec best;
  double bestNorm = -1.0;
  for (std::size_t j = 0; j < d; ++j) {
    Vec e(d, 0.0);
    e[j] = 1.0;
    project_out(e, F.basis);
    const double n = norm2(e);
    if (n > bestNorm) {
      bestNorm = n;
      best = std::move(e);
    }
  }
  if (bestNorm <= tol) throw DegenerateInput("hyperplane_through: rank deficient");
  normalize_inplace(best);
  Vec h(d + 1);
  std::copy(best.begin(), best.end(), h.begin());
  h[d] = -dot(best, F.base);
  return h;
}

Projection dist_point_to_flat(std::span<const double> y, const AffineFlat& F) {
  if (y.size() != F.base.size()) throw DimensionMismatch("dist_point_to_flat: dim mismatch");
  Vec rel = sub(y, F.base);
  Vec foot = F.base;
  for (const Vec& b : F.basis) axpy(foot, dot(rel, b), b);
  return {dist2(y, foot), std::move(foot)};
}

namespace {

Projection simplex_distance_rec(std::span<const double> y, const std::vector<Vec>& pts,
                                double tol) {
  if (pts.size() == 1) return {dist2(y, pts[0]), pts[0]};

  // Project onto the affine hull and read off barycentric coordinates from
  // the Gram-Schmidt triangular factor: pts[i]-pts[0] = sum_j R[j][i-1] b_j.
  AffineFlat F;
  F.base = pts[0];
  const std::size_t m = pts.size() - 1;
  std::vector<Vec> R(m, Vec(m, 0.0));
  bool degenerate = false;
  for (std::size_t i = 1; i <= m; ++i) {
    Vec v = sub(pts[i], F.base);
    const double orig = norm2(v);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < F.basis.size(); ++j) {
        const double c = dot(v, F.basis[j]);
        R[j][i - 1] += c;
        axpy(v, -c, F.basis[j]);
      }
    }
    const double rem = norm2(v);
    if (rem <= tol * std::max(orig, 1e-300)) {
      degenerate = true;
      break;
    }
    R[F.basis.size()][i - 1] = rem;
    normalize_inplace(v);
    F.basis.push_back(std::move(v));
  }

  Projection best;
  best.distance = -1.0;
  if (!degenerate) {
    Vec rel = sub(y, F.base);
    Vec f(m);  // coordinates of the foot in the orthonormal basis
    for (std::size_t j = 0; j < m; ++j) f[j] = dot(rel, F.basis[j]);
    // Back-substitute R c = f (R upper triangular).
    Vec c(m);
    for (int i = static_cast<int>(m) - 1; i >= 0; --i) {
      double s = f[i];
      for (std::size_t j = i + 1; j < m; ++j) s -= R[i][j] * c[j];
      c[i] = s / R[i][i];
    }
    double c0 = 1.0;
    bool inside = true;
    for (double ci : c) {
      c0 -= ci;
      if (ci < -tol) inside = false;
    }
    if (c0 < -tol) inside = false;
    if (inside) {
      Vec foot = F.base;
      for (std::size_t j = 0; j < m; ++j) axpy(foot, f[j], F.basis[j]);
      return {dist2(y, foot), std::move(foot)};
    }
  }

  // Foot outside (or hull degenerate): the nearest point lies on a facet.
  for (std::size_t skip = 0; skip < pts.size(); ++skip) {
    std::vector<Vec> facet;
    facet.reserve(pts.size() - 1);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != skip) facet.push_back(pts[i]);
    Projection p = simplex_distance_rec(y, facet, tol);
    if (best.distance < 0.0 || p.distance < best.distance) best = std::move(p);
  }
  return best;
}

}  // namespace

Projection dist_point_to_simplex_of(std::span<const double> y, const std::vector<Vec>& pts,
                                    double tol) {
  if (pts.empty()) throw DegenerateInput("dist_point_to_simplex: empty vertex list");
  for (const Vec& p : pts)
    if (p.size() != y.size()) throw DimensionMismatch("dist_point_to_simplex: dim mismatch");
  return simplex_distance_rec(y, pts, tol);
}

Projection dist_point_to_simplex(std::span<const double> y, const PointSet& S,
                                 const IndexSubset& A, double tol) {
  std::vector<Vec> pts;
  pts.reserve(A.indices.size());
  for (int id : A.indices) pts.push_back(S.row(id));
  return dist_point_to_simplex_of(y, pts, tol);
}

namespace {

// Rank of the difference vectors at relative tolerance (affine rank - 1).
bool affinely_dependent(const std::vector<Vec>& pts, double tol) {
  std::vector<Vec> basis;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Vec v = sub(pts[i], pts[0]);
    const double orig = norm2(v);
    project_out(v, basis);
    if (norm2(v) <= tol * std::max(orig, 1e-300)) return true;
    normalize_inplace(v);
    basis.push_back(std::move(v));
  }
  return false;
}

}  // namespace

GeneralPositionReport validate_general_position(const PointSet& S, const Vec* y, int level,
                                                const NumericPolicy& policy, std::size_t budget) {
  const int N = S.size() + (y ? 1 : 0);
  GeneralPositionReport report;
  auto pointAt = [&](int id) -> Vec { return id < S.size() ? S.row(id) : *y; };

  // A j-flat with j >= d is the whole space; only j < d is a constraint.
  for (int j = 1; j <= std::min(level, S.dim() - 1); ++j) {
    const int r = j + 2;  // subset size
    if (r > N) break;
    // Subset count C(N, r) against the budget.
    double count = 1.0;
    for (int i = 0; i < r; ++i) count *= static_cast<double>(N - i) / (i + 1);
    if (count <= static_cast<double>(budget)) {
      std::vector<int> idx(r);
      for (int i = 0; i < r; ++i) idx[i] = i;
      while (true) {
        std::vector<Vec> pts;
        pts.reserve(r);
        for (int id : idx) pts.push_back(pointAt(id));
        if (affinely_dependent(pts, policy.tolerance)) report.dependent.push_back(idx);
        int pos = r - 1;
        while (pos >= 0 && idx[pos] == N - r + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < r; ++i) idx[i] = idx[i - 1] + 1;
      }
    } else {
      report.exhaustive = false;
      SplitRng rng(policy.seed ^ (0x6a09e667f3bcc908ull + static_cast<std::uint64_t>(j)));
      for (std::size_t trial = 0; trial < budget; ++trial) {
        std::vector<int> idx;
        while (static_cast<int>(idx.size()) < r) {
          int c = static_cast<int>(rng.nextBelow(N));
          if (std::find(idx.begin(), idx.end(), c) == idx.end()) idx.push_back(c);
        }
        std::sort(idx.begin(), idx.end());
        std::vector<Vec> pts;
        pts.reserve(r);
        for (int id : idx) pts.push_back(pointAt(id));
        if (affinely_dependent(pts, policy.tolerance)) report.dependent.push_back(idx);
      }
    }
  }
  std::sort(report.dependent.begin(), report.dependent.end());
  report.dependent.erase(std::unique(report.dependent.begin(), report.dependent.end()),
                         report.dependent.end());
  return report;
}

PointSet perturb(const PointSet& S, double rho, std::uint64_t seed) {
  if (rho == 0.0) return S;
  const double mag = rho * S.scale();
  SplitRng rng(seed ^ 0x243f6a8885a308d3ull);
  std::vector<double> coords = S.raw();
  for (double& c : coords) c += rng.nextDouble(-mag, mag);
  return PointSet(S.dim(), std::move(coords));
}

}  // namespace induced
