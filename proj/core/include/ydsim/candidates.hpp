#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ydsim/complex.hpp"
#include "ydsim/incidence.hpp"

namespace ydsim {

// Visit every d-face NOT in y, in colex rank order. The visitor receives
// (rank, vertices, boundary sub ranks).
template <typename Visitor>
void for_each_non_face(const Complex& y, Visitor&& visit) {
  const uint32_t dp1 = y.d() + 1;
  std::vector<uint32_t> vs(dp1);
  for (uint32_t i = 0; i < dp1; ++i) vs[i] = i;
  std::vector<uint64_t> subs(dp1);
  const uint64_t total = y.max_d_faces();
  auto in_y = y.faces().begin();
  const auto end_y = y.faces().end();
  for (uint64_t rank = 0; rank < total; ++rank) {
    while (in_y != end_y && *in_y < rank) ++in_y;
    if (!(in_y != end_y && *in_y == rank)) {
      boundary_sub_ranks(vs, subs);
      visit(rank, std::span<const uint32_t>(vs),
            std::span<const uint64_t>(subs));
    }
    // colex successor
    uint32_t i = 0;
    while (i + 1 < dp1 && vs[i] + 1 == vs[i + 1]) ++i;
    ++vs[i];
    for (uint32_t j = 0; j < i; ++j) vs[j] = j;
  }
}

}  // namespace ydsim
