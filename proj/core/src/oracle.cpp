#include "induced/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace induced::oracle {

namespace {

// Gaussian elimination with partial pivoting on a small symmetric system.
// Returns false when the matrix is numerically singular.
bool solve_dense(std::vector<Vec> A, Vec b, Vec& x) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-13) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r][col] / A[col][col];
      for (int cc = col; cc < n; ++cc) A[r][cc] -= f * A[col][cc];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int cc = r + 1; cc < n; ++cc) s -= A[r][cc] * x[cc];
    x[r] = s / A[r][r];
  }
  return true;
}

// Projection residual of y onto aff(pts) from the Gram system
// (W^T W) c = W^T (y - p0), W = [p1-p0 ... pm-p0].
struct NormalProjection {
  double distance;
  Vec coeffs;  // barycentric weights of p1..pm (p0 gets 1 - sum)
  bool ok;
};

NormalProjection project_normal_equations(std::span<const double> y, const std::vector<Vec>& pts) {
  const std::size_t m = pts.size() - 1;
  if (m == 0) return {dist2(y, pts[0]), {}, true};
  std::vector<Vec> W;
  W.reserve(m);
  for (std::size_t i = 1; i <= m; ++i) W.push_back(sub(pts[i], pts[0]));
  std::vector<Vec> G(m, Vec(m));
  Vec rhs(m);
  const Vec rel = sub(y, pts[0]);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) G[i][j] = dot(W[i], W[j]);
    rhs[i] = dot(W[i], rel);
  }
  Vec c;
  if (!solve_dense(G, rhs, c)) return {0.0, {}, false};
  Vec foot(pts[0]);
  for (std::size_t i = 0; i < m; ++i) axpy(foot, c[i], W[i]);
  return {dist2(y, foot), c, true};
}

// Enumerate size-r id subsets of [0, n).
template <class Fn>
void for_each_subset(int n, int r, Fn&& fn) {
  if (r > n) return;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int pos = r - 1;
    while (pos >= 0 && idx[pos] == n - r + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < r; ++i) idx[i] = idx[i - 1] + 1;
  }
}

std::uint64_t subset_count(int n, int r) {
  if (r > n) return 0;
  long double c = 1;
  for (int i = 0; i < r; ++i) c = c * (n - i) / (i + 1);
  return static_cast<std::uint64_t>(c + 0.5);
}

// Phase-1 feasibility simplex, local to the oracle.  Anti-cycling via
// Bland's smallest-index rule on both the entering and leaving choices;
// degenerate membership instances stall under greedier pivot rules.
bool feasible(std::vector<Vec> rows, Vec b) {
  const int m = static_cast<int>(rows.size());
  const int nStruct = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  const int n = nStruct + m;
  double scale = 1.0;
  for (const Vec& r : rows)
    for (double v : r) scale = std::max(scale, std::abs(v));
  for (double v : b) scale = std::max(scale, std::abs(v));
  const double eps = 1e-11 * scale;

  std::vector<Vec> t(m, Vec(n, 0.0));
  Vec rhs(m);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < nStruct; ++j) t[i][j] = sign * rows[i][j];
    rhs[i] = sign * b[i];
    t[i][nStruct + i] = 1.0;
    basis[i] = nStruct + i;
  }
  Vec cost(n, 0.0);
  for (int j = nStruct; j < n; ++j) cost[j] = 1.0;

  for (long guard = 0; guard < 500000; ++guard) {
    int enter = -1;
    for (int j = 0; j < n && enter < 0; ++j) {
      double red = cost[j];
      for (int i = 0; i < m; ++i) red -= cost[basis[i]] * t[i][j];
      if (red < -eps) enter = j;
    }
    if (enter < 0) break;
    int leave = -1;
    double ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] > eps) {
        const double rr = rhs[i] / t[i][enter];
        if (leave < 0 || rr < ratio - eps ||
            (std::abs(rr - ratio) <= eps && basis[i] < basis[leave])) {
          leave = i;
          ratio = rr;
        }
      }
    }
    if (leave < 0) break;  // numerically unbounded; treat the residual as final
    const double p = t[leave][enter];
    for (int j = 0; j < n; ++j) t[leave][j] /= p;
    rhs[leave] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = t[i][enter];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) t[i][j] -= f * t[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    basis[leave] = enter;
  }
  double infeas = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= nStruct) infeas += rhs[i];
  return infeas <= eps * std::max(1, m);
}

}  // namespace

double flat_distance_normal_equations(std::span<const double> y, const std::vector<Vec>& pts) {
  const NormalProjection p = project_normal_equations(y, pts);
  if (!p.ok) {
    // Rank-deficient subset: fall back to the largest independent prefix by
    // dropping trailing points (distance can only use the spanned flat).
    std::vector<Vec> reduced = pts;
    while (reduced.size() > 1) {
      reduced.pop_back();
      const NormalProjection q = project_normal_equations(y, reduced);
      if (q.ok) return q.distance;
    }
    return dist2(y, pts[0]);
  }
  return p.distance;
}

double simplex_distance_faces(std::span<const double> y, const std::vector<Vec>& pts) {
  const int r = static_cast<int>(pts.size());
  double best = -1.0;
  // Every nonempty sub-subset is a candidate face; the admissible ones have
  // nonnegative barycentric weights at the projected foot.
  for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
    std::vector<Vec> face;
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) face.push_back(pts[i]);
    const NormalProjection p = project_normal_equations(y, face);
    if (!p.ok) continue;
    double w0 = 1.0;
    bool admissible = true;
    for (double c : p.coeffs) {
      w0 -= c;
      if (c < -1e-12) admissible = false;
    }
    if (w0 < -1e-12) admissible = false;
    if (!admissible) continue;
    if (best < 0.0 || p.distance < best) best = p.distance;
  }
  if (best < 0.0) {
    for (const Vec& p : pts) {
      const double d = dist2(y, p);
      if (best < 0.0 || d < best) best = d;
    }
  }
  return best;
}

OracleReport brute_nearest_flat(const PointSet& S, std::span<const double> y, int k,
                                Variant variant, std::uint64_t budget) {
  const int n = S.size();
  const int draw = variant == Variant::Linear ? k - 1 : k;
  if (draw < 1 || n < draw) throw DimensionMismatch("brute_nearest_flat: not enough points");
  if (subset_count(n, draw) > budget)
    throw BudgetExceeded("brute_nearest_flat: enumeration over budget");

  OracleReport rep;
  double best = -1.0;
  const double tieTol = 1e-12;
  for_each_subset(n, draw, [&](const std::vector<int>& idx) {
    ++rep.candidates;
    std::vector<Vec> pts;
    if (variant == Variant::Linear) pts.push_back(Vec(S.dim(), 0.0));
    for (int id : idx) pts.push_back(S.row(id));
    const double dist = flat_distance_normal_equations(y, pts);
    IndexSubset sub{idx, variant == Variant::Linear ? SubsetKind::Linear : SubsetKind::Affine};
    if (best < 0.0 || dist < best - tieTol * std::max(1.0, best)) {
      best = dist;
      rep.optimizers = {sub};
    } else if (dist <= best + tieTol * std::max(1.0, best)) {
      rep.optimizers.push_back(sub);
    }
  });
  rep.optimum = best;
  return rep;
}

OracleReport brute_nearest_simplex(const PointSet& S, std::span<const double> y, int k,
                                   std::uint64_t budget) {
  const int n = S.size();
  std::uint64_t total = 0;
  for (int r = 1; r <= k; ++r) total += subset_count(n, r);
  if (total > budget) throw BudgetExceeded("brute_nearest_simplex: enumeration over budget");

  OracleReport rep;
  double best = -1.0;
  const double tieTol = 1e-12;
  for (int r = 1; r <= std::min(k, n); ++r) {
    for_each_subset(n, r, [&](const std::vector<int>& idx) {
      ++rep.candidates;
      std::vector<Vec> pts;
      for (int id : idx) pts.push_back(S.row(id));
      const double dist = simplex_distance_faces(y, pts);
      IndexSubset sub{idx, SubsetKind::Convex};
      if (best < 0.0 || dist < best - tieTol * std::max(1.0, best)) {
        best = dist;
        rep.optimizers = {sub};
      } else if (dist <= best + tieTol * std::max(1.0, best)) {
        rep.optimizers.push_back(sub);
      }
    });
  }
  rep.optimum = best;
  return rep;
}

bool subset_intersects(const PointSet& S, const std::vector<int>& subset,
                       const QuerySimplex& delta, CountKind kind) {
  const int d = S.dim();
  std::vector<Vec> pts;
  if (kind == CountKind::Linear) pts.push_back(Vec(d, 0.0));
  for (int id : subset) pts.push_back(S.row(id));
  const std::vector<Vec> B = delta.vertexList();
  const int p = static_cast<int>(pts.size());
  const int q = static_cast<int>(B.size());

  // Feasibility of: sum_i alpha_i pts_i = sum_j mu_j B_j, sum alpha = 1,
  // sum mu = 1, mu >= 0, and alpha >= 0 in the convex case (alpha split into
  // +/- parts otherwise).
  const bool convex = kind == CountKind::Convex;
  const int alphaCols = convex ? p : 2 * p;
  std::vector<Vec> rows(d + 2, Vec(alphaCols + q, 0.0));
  Vec b(d + 2, 0.0);
  for (int r = 0; r < d; ++r) {
    for (int i = 0; i < p; ++i) {
      if (convex) {
        rows[r][i] = pts[i][r];
      } else {
        rows[r][2 * i] = pts[i][r];
        rows[r][2 * i + 1] = -pts[i][r];
      }
    }
    for (int j = 0; j < q; ++j) rows[r][alphaCols + j] = -B[j][r];
    b[r] = 0.0;
  }
  for (int i = 0; i < p; ++i) {
    if (convex) {
      rows[d][i] = 1.0;
    } else {
      rows[d][2 * i] = 1.0;
      rows[d][2 * i + 1] = -1.0;
    }
  }
  b[d] = 1.0;
  for (int j = 0; j < q; ++j) rows[d + 1][alphaCols + j] = 1.0;
  b[d + 1] = 1.0;
  return feasible(std::move(rows), std::move(b));
}

std::uint64_t brute_count(const PointSet& S, int k, const QuerySimplex& delta, CountKind kind,
                          std::uint64_t budget) {
  const int n = S.size();
  const int draw = kind == CountKind::Linear ? k - 1 : k;
  if (subset_count(n, draw) > budget) throw BudgetExceeded("brute_count: enumeration over budget");
  std::uint64_t count = 0;
  for_each_subset(n, draw, [&](const std::vector<int>& idx) {
    if (subset_intersects(S, idx, delta, kind)) ++count;
  });
  return count;
}

bool brute_degeneracy(const PointSet& S, double tol, std::uint64_t budget) {
  const int n = S.size();
  const int d = S.dim();
  if (n < d + 1) return false;
  if (subset_count(n, d + 1) > budget) throw BudgetExceeded("brute_degeneracy: over budget");
  bool found = false;
  for_each_subset(n, d + 1, [&](const std::vector<int>& idx) {
    if (found) return;
    // |det[p1-p0 ... pd-p0]| against the product of row norms.
    std::vector<Vec> M;
    double rowScale = 1.0;
    for (int i = 1; i <= d; ++i) {
      Vec r = sub(S[idx[i]], S[idx[0]]);
      rowScale *= std::max(norm2(r), 1e-300);
      M.push_back(std::move(r));
    }
    double det = 1.0;
    for (int col = 0; col < d; ++col) {
      int piv = col;
      for (int r = col + 1; r < d; ++r)
        if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
      if (piv != col) {
        std::swap(M[piv], M[col]);
        det = -det;
      }
      det *= M[col][col];
      if (M[col][col] == 0.0) break;
      for (int r = col + 1; r < d; ++r) {
        const double f = M[r][col] / M[col][col];
        for (int cc = col; cc < d; ++cc) M[r][cc] -= f * M[col][cc];
      }
    }
    if (std::abs(det) <= tol * rowScale) found = true;
  });
  return found;
}

}  // namespace induced::oracle
