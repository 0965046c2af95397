#include "ydsim/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace ydsim {

double SampleConfig::probability() const {
  double prob;
  if (p >= 0.0 && c >= 0.0)
    throw std::invalid_argument("SampleConfig: set either p or c, not both");
  if (p >= 0.0)
    prob = p;
  else if (c >= 0.0)
    prob = c / n;
  else
    throw std::invalid_argument("SampleConfig: one of p or c is required");
  if (!(prob >= 0.0 && prob <= 1.0))
    throw std::invalid_argument("SampleConfig: probability outside [0,1]");
  if (n < d + 2) throw std::invalid_argument("SampleConfig: need n > d+1");
  return prob;
}

Complex sample_binomial(const SampleConfig& cfg) {
  double p = cfg.probability();
  uint64_t total = binomial(cfg.n, cfg.d + 1);
  std::vector<uint64_t> faces;
  auto rng = SplitMix64::substream(cfg.seed, 0x62696e6f6dULL);
  if (p >= 1.0) {
    faces.resize(total);
    for (uint64_t i = 0; i < total; ++i) faces[i] = i;
  } else if (p > 0.0) {
    faces.reserve(static_cast<size_t>(p * total * 1.1) + 16);
    // geometric skipping over the colex order: the gap to the next kept
    // face is Geometric(p)
    const double log1mp = std::log1p(-p);
    double idx = -1.0;
    for (;;) {
      double u = rng.next_double();
      idx += 1.0 + std::floor(std::log1p(-u) / log1mp);
      if (idx >= static_cast<double>(total)) break;
      faces.push_back(static_cast<uint64_t>(idx));
    }
  }
  return Complex(cfg.n, cfg.d, std::move(faces));
}

EvolutionStream::EvolutionStream(const SampleConfig& cfg)
    : total_(binomial(cfg.n, cfg.d + 1)),
      rng_(SplitMix64::substream(cfg.seed, 0x65766f6cULL)) {
  if (cfg.n < cfg.d + 2) throw std::invalid_argument("EvolutionStream: bad n");
}

uint64_t EvolutionStream::next_face() {
  if (next_ >= total_) throw std::out_of_range("evolution stream exhausted");
  uint64_t i = next_++;
  uint64_t j = i + rng_.next_below(total_ - i);
  auto geti = [this](uint64_t k) {
    auto it = swaps_.find(k);
    return it == swaps_.end() ? k : it->second;
  };
  uint64_t vi = geti(i), vj = geti(j);
  swaps_[j] = vi;  // value at i is consumed; position i never read again
  return vj;
}

Complex sample_uniform_m(const SampleConfig& cfg, uint64_t m) {
  uint64_t total = binomial(cfg.n, cfg.d + 1);
  if (m > total)
    throw std::invalid_argument("sample_uniform_m: m exceeds C(n,d+1)");
  EvolutionStream stream(cfg);
  std::vector<uint64_t> faces;
  faces.reserve(m);
  for (uint64_t i = 0; i < m; ++i) faces.push_back(stream.next_face());
  return Complex(cfg.n, cfg.d, std::move(faces));
}

}  // namespace ydsim
