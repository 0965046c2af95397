#include "ydsim/incidence.hpp"

#include <numeric>
#include <stdexcept>

namespace ydsim {

void boundary_sub_ranks(std::span<const uint32_t> vs, std::span<uint64_t> out) {
  const size_t k = vs.size();  // k = d+1 vertices
  if (k >= 32) throw std::invalid_argument("boundary_sub_ranks: d too large");
  // prefix[i] = sum_{j<i} C(v_j, j+1); suffix[i] = sum_{j>i} C(v_j, j)
  uint64_t suffix[33] = {0};
  for (size_t i = k; i-- > 1;)
    suffix[i] = suffix[i + 1] + binomial(vs[i], i);
  uint64_t prefix = 0;
  for (size_t i = 0; i < k; ++i) {
    out[i] = prefix + suffix[i + 1];
    prefix += binomial(vs[i], i + 1);
  }
}

std::vector<std::pair<std::vector<uint32_t>, int>> boundary_faces(
    std::span<const uint32_t> sigma) {
  if (sigma.size() < 2)
    throw std::invalid_argument("boundary_faces: need at least 2 vertices");
  for (size_t i = 1; i < sigma.size(); ++i)
    if (sigma[i] <= sigma[i - 1])
      throw std::invalid_argument("boundary_faces: vertices must increase");
  std::vector<std::pair<std::vector<uint32_t>, int>> out;
  out.reserve(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i) {
    std::vector<uint32_t> sub;
    sub.reserve(sigma.size() - 1);
    for (size_t j = 0; j < sigma.size(); ++j)
      if (j != i) sub.push_back(sigma[j]);
    out.emplace_back(std::move(sub), (i % 2 == 0) ? 1 : -1);
  }
  return out;
}

IncidenceIndex::IncidenceIndex(const Complex& y)
    : n_(y.n()), d_(y.d()), face_count_(y.f_d()) {
  const uint32_t dp1 = d_ + 1;
  face_subs_.resize(face_count_ * dp1);

  const uint64_t skeleton_size = binomial(n_, d_);
  use_dense_ = skeleton_size <= (1ULL << 25);
  if (use_dense_) dense_lookup_.assign(skeleton_size, -1);
  else hash_lookup_.reserve(2 * face_count_ * dp1);

  std::vector<uint32_t> verts(dp1);
  std::vector<uint64_t> subs(dp1);
  for (uint64_t f = 0; f < face_count_; ++f) {
    face_unrank_into(y.faces()[f], n_, dp1, verts);
    boundary_sub_ranks(verts, subs);
    for (uint32_t i = 0; i < dp1; ++i) {
      uint64_t r = subs[i];
      uint32_t s;
      if (use_dense_) {
        int32_t& slot = dense_lookup_[r];
        if (slot < 0) {
          slot = static_cast<int32_t>(sub_rank_.size());
          sub_rank_.push_back(r);
          degree_.push_back(0);
        }
        s = static_cast<uint32_t>(slot);
      } else {
        auto [it, inserted] =
            hash_lookup_.try_emplace(r, static_cast<uint32_t>(sub_rank_.size()));
        if (inserted) {
          sub_rank_.push_back(r);
          degree_.push_back(0);
        }
        s = it->second;
      }
      face_subs_[f * dp1 + i] = s;
      ++degree_[s];
    }
  }

  // containment lists in CSR form
  sub_off_.assign(sub_rank_.size() + 1, 0);
  for (uint32_t s = 0; s < sub_rank_.size(); ++s)
    sub_off_[s + 1] = sub_off_[s] + static_cast<uint64_t>(degree_[s]);
  sub_faces_.resize(sub_off_.back());
  std::vector<uint64_t> cursor(sub_off_.begin(), sub_off_.end() - 1);
  for (uint64_t f = 0; f < face_count_; ++f)
    for (uint32_t i = 0; i < dp1; ++i) {
      uint32_t s = face_subs_[f * dp1 + i];
      sub_faces_[cursor[s]++] = static_cast<uint32_t>(f);
    }
}

int64_t IncidenceIndex::find_sub(uint64_t rank) const {
  if (use_dense_) {
    if (rank >= dense_lookup_.size()) return -1;
    return dense_lookup_[rank];
  }
  auto it = hash_lookup_.find(rank);
  return it == hash_lookup_.end() ? -1 : static_cast<int64_t>(it->second);
}

uint64_t IncidenceIndex::degree_sum() const {
  return std::accumulate(degree_.begin(), degree_.end(), uint64_t{0});
}

}  // namespace ydsim
