#pragma once

#include <cmath>
#include <cstdint>

namespace ydsim {

// SplitMix64 generator. State advances by a fixed odd gamma; each output is a
// finalizing hash of the counter, so the stream is a pure function of
// (initial state, step index).
//
// Stream splitting: substream(seed, key) feeds (seed, key) through two
// finalizer rounds to produce an independent initial state. Trial i of a
// Monte Carlo run uses substream(seed, i), which makes every trial
// reproducible regardless of scheduling.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  static uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static SplitMix64 substream(uint64_t seed, uint64_t key) {
    return SplitMix64(mix(mix(seed) ^ (key * 0xda942042e4dd58b5ULL)));
  }

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_double() { return (next() >> 11) * 0x1.0p-53; }

  // uniform in {0,...,bound-1}, bound >= 1; unbiased via rejection
  uint64_t next_below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Poisson(lambda) by inversion with sequential search. Exact for the
  // desk-scale range lambda <= ~30 used throughout.
  uint64_t next_poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    double u = next_double();
    double p = std::exp(-lambda);
    double cdf = p;
    uint64_t k = 0;
    while (u > cdf && k < 400) {
      ++k;
      p *= lambda / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }

 private:
  uint64_t state_;
};

}  // namespace ydsim
