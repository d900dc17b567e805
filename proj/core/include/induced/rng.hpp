#pragma once

#include <cstdint>

// Splittable counter-based PRNG (splitmix64 core).  std::uniform_*_distribution
// is not bit-portable across standard library implementations, so all random
// draws in the library go through this to keep seeded runs byte-reproducible.

namespace induced {

class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  std::uint64_t nextU64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double nextDouble() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double nextDouble(double lo, double hi) { return lo + (hi - lo) * nextDouble(); }

  // Unbiased uniform in [0, n); n must be positive.
  std::uint64_t nextBelow(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = nextU64();
    } while (v >= limit);
    return v % n;
  }

  // Approximate standard normal (sum of 12 uniforms keeps draws portable and
  // is plenty for instance generation).
  double nextGaussian() {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += nextDouble();
    return s - 6.0;
  }

  // Independent child stream; children with distinct tags do not collide.
  SplitRng split(std::uint64_t tag) const {
    SplitRng r(0);
    r.state_ = mix(state_ ^ mix(tag + 0xd6e8feb86659fd93ull));
    return r;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace induced
