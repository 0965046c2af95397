#include "ydsim/poisson_tree.hpp"

#include <cmath>
#include <stdexcept>

#include "ydsim/stats.hpp"

namespace ydsim {

RootedTree sample_tree(double c, uint32_t d, uint32_t depth, uint64_t seed) {
  if (c <= 0.0) throw std::invalid_argument("sample_tree: c must be > 0");
  if (d < 1) throw std::invalid_argument("sample_tree: d must be >= 1");
  RootedTree t;
  t.d = d;
  t.depth = depth;
  auto rng = SplitMix64::substream(seed, 0x74726565ULL);

  t.sub_first_face.push_back(0);
  t.sub_face_count.push_back(0);
  t.sub_depth.push_back(0);

  // generate breadth-first; children of sub s occupy a contiguous face range
  for (uint64_t s = 0; s < t.sub_first_face.size(); ++s) {
    t.sub_first_face[s] = static_cast<uint32_t>(t.face_child_base.size());
    if (t.sub_depth[s] >= depth) {
      t.sub_face_count[s] = 0;
      continue;
    }
    uint64_t m = rng.next_poisson(c);
    t.sub_face_count[s] = static_cast<uint32_t>(m);
    for (uint64_t j = 0; j < m; ++j) {
      t.face_child_base.push_back(static_cast<uint32_t>(t.sub_count()));
      for (uint32_t r = 0; r < d; ++r) {
        t.sub_first_face.push_back(0);
        t.sub_face_count.push_back(0);
        t.sub_depth.push_back(t.sub_depth[s] + 1);
      }
    }
  }
  return t;
}

uint64_t rooted_collapse_tree(const RootedTree& t, uint32_t k) {
  if (k > t.depth)
    throw std::invalid_argument(
        "rooted_collapse_tree: k exceeds the truncated depth");
  if (t.face_count() == 0) return 0;
  // exposure time per sub node, bottom-up: e(s) = 1 + max over child faces
  // of (min over the face's children of e), with no-children meaning e = 0.
  // A face containing the root survives phase j iff every child has e > j-1.
  const uint64_t ns = t.sub_count();
  std::vector<uint32_t> expose(ns);
  const uint32_t inf = UINT32_MAX;
  for (uint64_t s = ns; s-- > 1;) {  // children come after parents
    uint32_t m = t.sub_face_count[s];
    if (m == 0) {
      expose[s] = 0;
      continue;
    }
    uint32_t best = 0;  // max over faces of min child exposure
    for (uint32_t j = 0; j < m; ++j) {
      uint32_t base = t.face_child_base[t.sub_first_face[s] + j];
      uint32_t lo = inf;
      for (uint32_t r = 0; r < t.d; ++r) lo = std::min(lo, expose[base + r]);
      best = std::max(best, lo == inf ? inf : lo);
      if (best == inf) break;
    }
    expose[s] = best == inf ? inf : best + 1;
  }
  uint64_t deg = 0;
  for (uint32_t j = 0; j < t.sub_face_count[0]; ++j) {
    uint32_t base = t.face_child_base[t.sub_first_face[0] + j];
    uint32_t lo = inf;
    for (uint32_t r = 0; r < t.d; ++r) lo = std::min(lo, expose[base + r]);
    if (lo >= k) ++deg;  // survives k phases iff every child has e >= k
  }
  return deg;
}

namespace {

// lazily decide whether the root of an implicit subtree is exposed after j
// phases; subtrees are sampled on demand and abandoned on short-circuit
bool exposed_lazy(double c, uint32_t d, uint32_t j, SplitMix64& rng) {
  uint64_t m = rng.next_poisson(c);
  if (m == 0) return true;
  if (j == 0) return false;
  for (uint64_t f = 0; f < m; ++f) {
    bool survives = true;
    for (uint32_t r = 0; r < d; ++r) {
      if (exposed_lazy(c, d, j - 1, rng)) {
        survives = false;
        // the remaining children of this face are irrelevant; their
        // subtrees are independent and simply never sampled
        break;
      }
    }
    if (survives) return false;
  }
  return true;
}

}  // namespace

uint64_t sample_delta_k(double c, uint32_t d, uint32_t k, SplitMix64& rng) {
  uint64_t m = rng.next_poisson(c);
  if (k == 0) return m;
  uint64_t deg = 0;
  for (uint64_t f = 0; f < m; ++f) {
    bool survives = true;
    for (uint32_t r = 0; r < d; ++r)
      if (exposed_lazy(c, d, k - 1, rng)) {
        survives = false;
        break;
      }
    if (survives) ++deg;
  }
  return deg;
}

double collapse_probability_empirical(double c, uint32_t d, uint32_t k,
                                      uint64_t trials, uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("collapse_probability_empirical: trials >= 1");
  uint64_t collapsed = 0;
  for (uint64_t i = 0; i < trials; ++i) {
    auto rng = SplitMix64::substream(seed, i);
    if (sample_delta_k(c, d, k, rng) == 0) ++collapsed;
  }
  return static_cast<double>(collapsed) / static_cast<double>(trials);
}

double x_tree(const RootedTree& t, LeafBoundary boundary) {
  const double leaf = boundary == LeafBoundary::one ? 1.0 : 0.0;
  const uint64_t ns = t.sub_count();
  std::vector<double> x(ns);
  for (uint64_t s = ns; s-- > 0;) {
    uint32_t m = t.sub_face_count[s];
    if (m == 0) {
      // childless interior nodes and truncation leaves both read the
      // boundary constant only at the truncation depth; an interior node
      // whose Poisson draw was 0 is genuinely exposed and has x = 1
      x[s] = t.sub_depth[s] >= t.depth ? leaf : 1.0;
      continue;
    }
    double recip_sum = 0.0;
    bool zero = false;
    for (uint32_t j = 0; j < m && !zero; ++j) {
      uint32_t base = t.face_child_base[t.sub_first_face[s] + j];
      double sum = 0.0;
      for (uint32_t r = 0; r < t.d; ++r) sum += x[base + r];
      if (sum == 0.0) zero = true;
      else recip_sum += 1.0 / sum;
    }
    x[s] = zero ? 0.0 : 1.0 / (1.0 + recip_sum);
  }
  return x[0];
}

std::complex<double> h_recursion(const RootedTree& t, double s,
                                 std::complex<double> leaf_value) {
  if (s == 0.0)
    throw std::invalid_argument("h_recursion: spectral parameter s must be nonzero");
  const std::complex<double> is(0.0, s);
  const uint64_t ns = t.sub_count();
  std::vector<std::complex<double>> h(ns);
  for (uint64_t u = ns; u-- > 0;) {
    uint32_t m = t.sub_face_count[u];
    if (m == 0) {
      h[u] = t.sub_depth[u] >= t.depth ? leaf_value : 1.0;
      continue;
    }
    std::complex<double> acc = 0.0;
    for (uint32_t j = 0; j < m; ++j) {
      uint32_t base = t.face_child_base[t.sub_first_face[u] + j];
      std::complex<double> sum = is;
      for (uint32_t r = 0; r < t.d; ++r) sum += h[base + r];
      acc += 1.0 / sum;
    }
    h[u] = 1.0 / (1.0 + acc);
  }
  return h[0];
}

PopulationResult population_dynamics_x(double c, uint32_t d,
                                       uint64_t pool_size, uint32_t iterations,
                                       uint64_t seed, LeafBoundary init) {
  if (pool_size < 2)
    throw std::invalid_argument("population_dynamics_x: pool too small");
  auto rng = SplitMix64::substream(seed, 0x706f6f6cULL);
  std::vector<double> pool(pool_size, init == LeafBoundary::one ? 1.0 : 0.0);
  std::vector<double> next(pool_size);
  for (uint32_t it = 0; it < iterations; ++it) {
    for (uint64_t i = 0; i < pool_size; ++i) {
      uint64_t m = rng.next_poisson(c);
      double recip_sum = 0.0;
      bool zero = false;
      for (uint64_t j = 0; j < m && !zero; ++j) {
        double sum = 0.0;
        for (uint32_t r = 0; r < d; ++r)
          sum += pool[rng.next_below(pool_size)];
        if (sum == 0.0) zero = true;
        else recip_sum += 1.0 / sum;
      }
      next[i] = zero ? 0.0 : 1.0 / (1.0 + recip_sum);
    }
    pool.swap(next);
  }
  PopulationResult res;
  RunningStat stat;
  uint64_t positive = 0;
  for (double v : pool) {
    stat.add(v);
    if (v > 0.0) ++positive;
  }
  res.mean_x = stat.mean();
  res.stderr_mean = stat.stderr_mean();
  res.p_positive = static_cast<double>(positive) / static_cast<double>(pool_size);
  return res;
}

}  // namespace ydsim
