#include "ydsim/boundary.hpp"

#include <algorithm>
#include <stdexcept>

#include "ydsim/incidence.hpp"

namespace ydsim {

namespace {

SparseBoundary build(const Complex& y,
                     const std::vector<uint64_t>* retained) {
  SparseBoundary m;
  const uint32_t dp1 = y.d() + 1;
  m.cols = y.f_d();
  m.entries_per_col = dp1;
  m.rows = retained ? retained->size() : binomial(y.n(), y.d());
  m.row_idx.reserve(m.cols * dp1);
  m.sign.reserve(m.cols * dp1);

  std::vector<uint32_t> verts(dp1);
  std::vector<uint64_t> subs(dp1);
  for (uint64_t f = 0; f < y.f_d(); ++f) {
    face_unrank_into(y.faces()[f], y.n(), dp1, verts);
    boundary_sub_ranks(verts, subs);
    for (uint32_t i = 0; i < dp1; ++i) {
      uint64_t row = subs[i];
      if (retained) {
        auto it = std::lower_bound(retained->begin(), retained->end(), row);
        if (it == retained->end() || *it != row)
          throw std::invalid_argument(
              "boundary_matrix_retained: sub-face missing from retained rows");
        row = static_cast<uint64_t>(it - retained->begin());
      }
      m.row_idx.push_back(row);
      m.sign.push_back(i % 2 == 0 ? int8_t{1} : int8_t{-1});
    }
  }
  return m;
}

}  // namespace

SparseBoundary boundary_matrix(const Complex& y) { return build(y, nullptr); }

SparseBoundary boundary_matrix_retained(
    const Complex& y, const std::vector<uint64_t>& retained) {
  return build(y, &retained);
}

}  // namespace ydsim
