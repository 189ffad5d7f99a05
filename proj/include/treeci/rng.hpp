#pragma once

#include <cstdint>

#include "treeci/errors.hpp"

namespace treeci {

// Seed for every generator in the library. Identical seeds must reproduce
// identical artifacts bit for bit, on any platform.
struct Seed {
  std::uint64_t value = 0;
};

// SplitMix64 (Steele, Lea, Flood 2014; Vigna's reference constants). Chosen
// because the algorithm is fully specified by three lines of integer
// arithmetic, so streams are reproducible across compilers and platforms.
// std::mt19937_64 would also be portable, but the std distribution adaptors
// are not; all real-to-int mappings here are therefore hand rolled.
class SplitMix64 {
 public:
  explicit SplitMix64(Seed seed) : state_(seed.value) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 significant bits. The scale constant is
  // 2^-53, exact in binary64.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 1.1102230246251565e-16;
  }

  // Uniform in [lo, hi).
  double next_real(double lo, double hi) {
    if (!(lo < hi)) throw ParamError("next_real: empty interval");
    return lo + next_unit() * (hi - lo);
  }

  // Uniform in [0, bound) by mask and reject; avoids modulo bias and is
  // identical everywhere.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw ParamError("next_below: bound must be positive");
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t v = next_u64() & mask;
      if (v < bound) return v;
    }
  }

  bool next_bit() { return (next_u64() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace treeci
