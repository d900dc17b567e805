#pragma once

#include <vector>

#include "induced/vec.hpp"

// Dense two-phase simplex with Bland's rule for the tiny fixed-size programs
// that face shooting produces (at most ~2d variables and d+1 rows).

namespace induced {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  Vec x;
};

// min c·x  subject to  A x = b,  x >= 0.
// `rows` is the list of constraint rows of A.
LpResult solve_lp(const std::vector<Vec>& rows, const Vec& b, const Vec& c,
                  double tol = 1e-11);

}  // namespace induced
