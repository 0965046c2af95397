#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ydsim/binomial.hpp"

namespace ydsim {

// Identity of a k-face: its colex rank among all C(n,k) k-subsets.
struct FaceId {
  uint64_t rank = 0;
  friend auto operator<=>(const FaceId&, const FaceId&) = default;
};

// A d-complex with full (d-1)-skeleton on n vertices. Only the top faces are
// stored (as sorted colex ranks of (d+1)-subsets); every lower face is
// implicitly present. Immutable by convention after construction and safe to
// share across threads.
class Complex {
 public:
  Complex(uint32_t n, uint32_t d, std::vector<uint64_t> d_face_ranks);

  uint32_t n() const { return n_; }
  uint32_t d() const { return d_; }
  const std::vector<uint64_t>& faces() const { return faces_; }

  uint64_t f_d() const { return faces_.size(); }
  // f_{d-1} of the full skeleton
  uint64_t f_dminus1_full() const { return binomial(n_, d_); }
  uint64_t max_d_faces() const { return binomial(n_, d_ + 1); }

  bool contains(uint64_t face_rank) const;

  // complex with one additional d-face (no-op if present)
  Complex with_face(uint64_t face_rank) const;

 private:
  uint32_t n_;
  uint32_t d_;
  std::vector<uint64_t> faces_;  // sorted ascending, unique
};

// JSON object {"n":..,"d":..,"faces":[...]} with ranks sorted ascending.
std::string to_json(const Complex& y);
Complex complex_from_json(const std::string& text);

// Plain text: header line "n d", then one d-face per line as
// space-separated vertices.
std::string to_text(const Complex& y);
Complex complex_from_text(std::istream& in);

Complex load_complex(const std::string& path);  // sniffs json vs text
void save_complex(const Complex& y, const std::string& path, bool json);

}  // namespace ydsim
