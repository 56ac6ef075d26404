#pragma once

#include <cstdint>

namespace gda_test {

// Deterministic LCG for reproducible randomized tests.
struct Lcg {
  uint64_t s;
  explicit Lcg(uint64_t seed) : s(seed) {}
  uint64_t next() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return s >> 33;
  }
  // uniform in [lo, hi]
  long long range(long long lo, long long hi) {
    return lo + (long long)(next() % (uint64_t)(hi - lo + 1));
  }
};

}  // namespace gda_test
