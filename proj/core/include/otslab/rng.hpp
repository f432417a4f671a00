#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace otslab {

/// Seeded generator with portable derived draws. std::mt19937_64's raw
/// output is pinned by the standard, but the standard distributions are
/// not; golden files and cross-compiler reproducibility need the draws
/// below instead of <random> distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t raw() { return engine_(); }

  /// Uniform double in [0,1), 53 mantissa bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Index drawn from the normalized version of `cumulative`, which must
  /// be the inclusive prefix sums of positive point masses.
  size_t pick_cumulative(const std::vector<double>& cumulative) {
    if (cumulative.empty()) throw std::invalid_argument("pick_cumulative: empty");
    const double u = uniform01() * cumulative.back();
    size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      const size_t mid = (lo + hi) / 2;
      if (cumulative[mid] > u) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace otslab
