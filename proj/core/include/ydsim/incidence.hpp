#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ydsim/complex.hpp"

namespace ydsim {

// Bipartite incidence between the (d-1)-faces and d-faces of a complex:
// per-(d-1)-face degrees and containment lists, plus the d+1 boundary
// sub-faces of every d-face. This is the read-only substrate the collapse
// engine works on; degrees are copied out before mutation.
//
// (d-1)-faces are addressed by a dense local index; only faces of positive
// degree get one (the full skeleton is never materialized).
class IncidenceIndex {
 public:
  explicit IncidenceIndex(const Complex& y);

  uint32_t n() const { return n_; }
  uint32_t d() const { return d_; }
  uint64_t face_count() const { return face_count_; }
  uint32_t sub_count() const { return static_cast<uint32_t>(sub_rank_.size()); }

  // colex rank of local (d-1)-face index
  uint64_t sub_rank(uint32_t s) const { return sub_rank_[s]; }
  // local index for a (d-1)-face rank, or -1 if the face is exposed
  int64_t find_sub(uint64_t rank) const;

  int32_t degree(uint32_t s) const { return degree_[s]; }

  // the d+1 sub-face indices of face f, contiguous
  const uint32_t* face_subs(uint64_t f) const {
    return face_subs_.data() + f * (d_ + 1);
  }
  // faces containing sub s
  std::pair<const uint32_t*, const uint32_t*> sub_faces(uint32_t s) const {
    return {sub_faces_.data() + sub_off_[s], sub_faces_.data() + sub_off_[s + 1]};
  }

  uint64_t degree_sum() const;  // = (d+1) * f_d, the handshake identity

 private:
  uint32_t n_, d_;
  uint64_t face_count_;
  std::vector<uint64_t> sub_rank_;
  std::vector<int32_t> degree_;
  std::vector<uint32_t> face_subs_;
  std::vector<uint64_t> sub_off_;
  std::vector<uint32_t> sub_faces_;

  // rank -> local index; dense table when C(n,d) is small enough, hash
  // otherwise
  std::vector<int32_t> dense_lookup_;
  std::unordered_map<uint64_t, uint32_t> hash_lookup_;
  bool use_dense_ = false;
};

// Colex ranks of the d+1 boundary (d-1)-faces of the vertex list vs
// (strictly increasing, length d+1), in boundary order: entry i is the face
// with vertex i removed, carrying sign (-1)^i.
void boundary_sub_ranks(std::span<const uint32_t> vs, std::span<uint64_t> out);

// boundary_faces: the d+1 (sub-face vertex list, sign) pairs of an oriented
// d-face under the sorted-vertex orientation convention.
std::vector<std::pair<std::vector<uint32_t>, int>> boundary_faces(
    std::span<const uint32_t> sigma);

}  // namespace ydsim
