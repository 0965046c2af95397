#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ydsim {

// Binomial coefficients and the combinatorial number system (colex order).
//
// A k-subset {v_0 < v_1 < ... < v_{k-1}} of {0,...,n-1} has colex rank
//   sum_i C(v_i, i+1),
// which enumerates all C(n,k) subsets in colexicographic order. Ranks give
// faces O(1) identity and dense row indices for boundary matrices.

// C(n,k) in uint64, throws std::overflow_error if the value does not fit.
uint64_t binomial(uint64_t n, uint64_t k);

// Largest v with C(v,k) <= target (target < C(n,k) for some known n).
uint64_t binomial_floor_inverse(uint64_t target, uint64_t k, uint64_t hi);

// Colex rank of a strictly increasing vertex list within {0,...,n-1}.
// Throws std::invalid_argument on a malformed face.
uint64_t face_rank(std::span<const uint32_t> vertices, uint32_t n);

// Inverse of face_rank: the unique strictly increasing k-list with the given
// rank. Throws std::out_of_range if rank >= C(n,k).
std::vector<uint32_t> face_unrank(uint64_t rank, uint32_t n, uint32_t k);

// In-place variant to avoid allocation in hot loops; out must have size k.
void face_unrank_into(uint64_t rank, uint32_t n, uint32_t k,
                      std::span<uint32_t> out);

}  // namespace ydsim
