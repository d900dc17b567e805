#include "induced/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace induced {

namespace {

struct Tableau {
  int m = 0, n = 0;    // rows, total columns
  std::vector<Vec> a;  // m rows of n coefficients
  Vec rhs;             // m entries, kept >= 0
  std::vector<int> basis;
  double eps = 0.0;

  void pivot(int row, int col) {
    const double p = a[row][col];
    for (int j = 0; j < n; ++j) a[row][j] /= p;
    rhs[row] /= p;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = a[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[row][j];
      rhs[i] -= f * rhs[row];
    }
    basis[row] = col;
  }

  // Minimizes cost over columns [0, nCols) with Bland's rule.
  // Returns false when unbounded, otherwise writes the objective.
  bool solveFor(const Vec& cost, int nCols, double& objective) {
    std::vector<char> isBasic(n, 0);
    for (int b : basis) isBasic[b] = 1;
    for (long iter = 0;; ++iter) {
      if (iter > 200000) throw std::logic_error("simplex: iteration guard tripped");
      int enter = -1;
      for (int j = 0; j < nCols; ++j) {
        if (isBasic[j]) continue;
        double red = cost[j];
        for (int i = 0; i < m; ++i) red -= cost[basis[i]] * a[i][j];
        if (red < -eps) {
          enter = j;  // Bland: smallest improving index
          break;
        }
      }
      if (enter < 0) break;
      int leave = -1;
      double bestRatio = 0.0;
      for (int i = 0; i < m; ++i) {
        if (a[i][enter] > eps) {
          const double ratio = rhs[i] / a[i][enter];
          if (leave < 0 || ratio < bestRatio - eps ||
              (std::abs(ratio - bestRatio) <= eps && basis[i] < basis[leave])) {
            leave = i;
            bestRatio = ratio;
          }
        }
      }
      if (leave < 0) return false;
      isBasic[basis[leave]] = 0;
      isBasic[enter] = 1;
      pivot(leave, enter);
    }
    objective = 0.0;
    for (int i = 0; i < m; ++i) objective += cost[basis[i]] * rhs[i];
    return true;
  }
};

}  // namespace

LpResult solve_lp(const std::vector<Vec>& rows, const Vec& b, const Vec& c, double tol) {
  const int m = static_cast<int>(rows.size());
  const int nStruct = static_cast<int>(c.size());

  double scale = 1.0;
  for (const Vec& r : rows)
    for (double v : r) scale = std::max(scale, std::abs(v));
  for (double v : b) scale = std::max(scale, std::abs(v));

  Tableau t;
  t.m = m;
  t.n = nStruct + m;
  t.eps = tol * scale;
  t.a.assign(m, Vec(t.n, 0.0));
  t.rhs.assign(m, 0.0);
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < nStruct; ++j) t.a[i][j] = sign * rows[i][j];
    t.rhs[i] = sign * b[i];
    t.a[i][nStruct + i] = 1.0;  // artificial
    t.basis[i] = nStruct + i;
  }

  // Phase 1: minimize the artificial sum (always bounded below by 0).
  Vec phase1(t.n, 0.0);
  for (int j = nStruct; j < t.n; ++j) phase1[j] = 1.0;
  double infeas = 0.0;
  t.solveFor(phase1, t.n, infeas);
  if (infeas > t.eps * std::max(1.0, static_cast<double>(m)))
    return {LpStatus::Infeasible, 0.0, {}};

  // Drive leftover zero-level artificials out of the basis where possible;
  // rows with no structural pivot are redundant and stay put harmlessly.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < nStruct) continue;
    for (int j = 0; j < nStruct; ++j) {
      if (std::abs(t.a[i][j]) > t.eps) {
        t.pivot(i, j);
        break;
      }
    }
  }

  Vec phase2(t.n, 0.0);
  for (int j = 0; j < nStruct; ++j) phase2[j] = c[j];
  double obj = 0.0;
  if (!t.solveFor(phase2, nStruct, obj)) return {LpStatus::Unbounded, 0.0, {}};

  LpResult res;
  res.status = LpStatus::Optimal;
  res.objective = obj;
  res.x.assign(nStruct, 0.0);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < nStruct) res.x[t.basis[i]] = t.rhs[i];
  return res;
}

}  // namespace induced
