#pragma once

#include <cstdint>
#include <random>

#include "sos/common/types.hpp"

namespace sos {

// Deterministic random source. All randomized routines take an explicit Rng
// (or a seed) so a run is reproducible bit-for-bit from the config seed;
// doubles come from an explicit bit manipulation rather than
// std::uniform_real_distribution, whose output is not pinned by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
  }

  // Independent child stream derived from the construction seed, not from the
  // evolving engine state: parallel loops hand one to each item so results do
  // not depend on scheduling order.
  Rng fork(std::uint64_t stream) const {
    std::uint64_t x = seed_ ^ (0x9e3779b97f4a7c15ULL * (stream + 0x243f6a8885a308d3ULL));
    // splitmix64 finalizer to decorrelate nearby streams
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    x = x ^ (x >> 31);
    return Rng(x);
  }

 private:
  std::mt19937_64 eng_;
  std::uint64_t seed_;
};

}  // namespace sos
