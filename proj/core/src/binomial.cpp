#include "ydsim/binomial.hpp"

#include <limits>

namespace ydsim {

uint64_t binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  if (k == 0) return 1;
  unsigned __int128 r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: r*(n-k+i) divisible by i at each step
    if (r > std::numeric_limits<uint64_t>::max())
      throw std::overflow_error("binomial: value exceeds uint64 range");
  }
  return static_cast<uint64_t>(r);
}

uint64_t binomial_floor_inverse(uint64_t target, uint64_t k, uint64_t hi) {
  // binary search for largest v in [k-1, hi] with C(v,k) <= target
  uint64_t lo = k - 1;  // C(k-1,k) = 0 <= target always
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo + 1) / 2;
    if (binomial(mid, k) <= target)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

uint64_t face_rank(std::span<const uint32_t> vertices, uint32_t n) {
  if (vertices.empty())
    throw std::invalid_argument("face_rank: empty vertex list");
  uint64_t r = 0;
  uint32_t prev = 0;
  for (size_t i = 0; i < vertices.size(); ++i) {
    uint32_t v = vertices[i];
    if (v >= n || (i > 0 && v <= prev))
      throw std::invalid_argument(
          "face_rank: vertices must be strictly increasing and < n");
    prev = v;
    r += binomial(v, i + 1);
  }
  return r;
}

void face_unrank_into(uint64_t rank, uint32_t n, uint32_t k,
                      std::span<uint32_t> out) {
  if (rank >= binomial(n, k))
    throw std::out_of_range("face_unrank: rank out of range");
  uint64_t rem = rank;
  uint64_t hi = n - 1;
  for (uint32_t i = k; i >= 1; --i) {
    uint64_t v = binomial_floor_inverse(rem, i, hi);
    out[i - 1] = static_cast<uint32_t>(v);
    rem -= binomial(v, i);
    hi = v - 1;  // next vertex is strictly smaller
  }
}

std::vector<uint32_t> face_unrank(uint64_t rank, uint32_t n, uint32_t k) {
  std::vector<uint32_t> out(k);
  face_unrank_into(rank, n, k, out);
  return out;
}

}  // namespace ydsim
