#pragma once

#include <cstdint>
#include <unordered_map>

#include "ydsim/complex.hpp"
#include "ydsim/rng.hpp"

namespace ydsim {

enum class SampleModel { binomial, uniform_m, evolution };

struct SampleConfig {
  uint32_t n = 0;
  uint32_t d = 2;
  double p = -1.0;   // face probability; set either p or c
  double c = -1.0;   // density, p = c/n
  uint64_t seed = 0;
  SampleModel model = SampleModel::binomial;

  double probability() const;  // resolves p vs c, validates [0,1]
};

// Y_d(n,p): each of the C(n,d+1) top faces kept independently with
// probability p. Sampling walks the colex order with geometric skips, so the
// cost is proportional to the output, not to C(n,d+1).
Complex sample_binomial(const SampleConfig& cfg);

// Y_d(n,m): exactly m distinct uniformly random d-faces. Realized as the
// length-m prefix of the evolution stream for the same seed, which makes the
// two models couple set-wise by construction.
Complex sample_uniform_m(const SampleConfig& cfg, uint64_t m);

// Lazily streamed uniformly random permutation of all C(n,d+1) face ranks
// (Fisher-Yates with a sparse swap map; memory grows with the consumed
// prefix only).
class EvolutionStream {
 public:
  explicit EvolutionStream(const SampleConfig& cfg);
  uint64_t size() const { return total_; }
  bool exhausted() const { return next_ == total_; }
  uint64_t next_face();  // throws std::out_of_range past the end

 private:
  uint64_t total_;
  uint64_t next_ = 0;
  SplitMix64 rng_;
  std::unordered_map<uint64_t, uint64_t> swaps_;
};

}  // namespace ydsim
