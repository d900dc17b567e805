#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "induced/types.hpp"

namespace induced {

struct SearchOptions {
  NumericPolicy policy;
  int threads = 1;
  // Binary search switches to exhaustive enumeration at this many surviving
  // unordered candidates, for robustness against near-ties.
  int enumerationCutoff = 16;
  // Cache per-prefix ordered counts during counting so a sampling replay can
  // jump straight to the right prefix (n^{k-2} extra memory).
  bool cachePrefixCounts = false;
  // Largest enumeration allowed by the no-face-improves fallback.
  std::size_t fallbackBudget = 2000000;
};

struct CountResult {
  std::uint64_t totalOrdered = 0;
  std::uint64_t multiplicity = 1;  // k! (affine/convex), (k-1)! (linear)
  std::uint64_t totalUnordered = 0;
};

// Instrumentation sink for the shrinking binary search.
struct ShootTrace {
  struct Step {
    double lambda;
    std::uint64_t unordered;
  };
  std::vector<Step> steps;
};

}  // namespace induced
