#pragma once

#include <cstdint>
#include <vector>

#include "ydsim/collapse.hpp"
#include "ydsim/complex.hpp"
#include "ydsim/rank.hpp"

namespace ydsim {

enum class FieldKind { rationals, prime_field };

struct FieldChoice {
  FieldKind kind = FieldKind::prime_field;
  uint32_t modulus = kDefaultPrime;

  static FieldChoice rationals() { return {FieldKind::rationals, 0}; }
  static FieldChoice prime(uint32_t q = kDefaultPrime);  // q must be prime
};

bool is_prime_u32(uint32_t q);

struct RankResult {
  uint64_t rank = 0;
  uint64_t kernel_dim = 0;    // cols - rank; this is beta_d
  uint64_t cokernel_dim = 0;  // rows - rank; dim of the left kernel Z
};

// Exact rank of a boundary matrix over the chosen field. Rationals run the
// fraction-free eliminator (ground truth, desk-scale only); a prime field
// runs the hybrid mod-p eliminator (rank <= rational rank, equal outside a
// finite set of bad primes).
RankResult rank_boundary(const SparseBoundary& m, FieldChoice field);

// beta_d = f_d - rank(boundary), with the cokernel convention that rows are
// all C(n,d) (d-1)-faces of the full skeleton.
uint64_t betti_d(const Complex& y, FieldChoice field);

// collapse first, compute the rank on the much smaller core
uint64_t betti_via_core(const Complex& y, FieldChoice field);

// Rational Betti number certified from mod-p data. Two one-sided bounds
// pin the value without big-integer elimination:
//   beta_Q <= beta_p                          (minors nonzero mod p stay
//                                              nonzero over Z)
//   rank_Q(bd_d) <= f1 - rank_p(bd_{d-1}|core)  (rows of bd_{d-1} restricted
//                                              to core columns lie in the
//                                              left kernel, bd o bd = 0)
//   beta_Q >= #explicit boundary-simplex cycles found in the core
// When either lower bound meets beta_p the rational value is certain.
struct CertifiedBetti {
  uint64_t betti = 0;       // exact over Q iff certified
  bool certified = false;
  uint64_t betti_mod_p = 0;
  uint64_t cocycle_bound = 0;  // f2c - (f1c - rank_p of restricted bd_{d-1})
  uint64_t cycle_bound = 0;    // explicit disjoint boundary-simplex cycles
};
CertifiedBetti betti_rational_certified(const Complex& y,
                                        uint32_t prime = kDefaultPrime);

// R-shadow: faces whose addition leaves rank(bd_d) unchanged (creates a new
// d-cycle). One elimination of the transposed matrix; candidates are tested
// against left-kernel functionals. Prime mode samples `functionals` random
// kernel vectors (miss probability <= p^-functionals per candidate);
// rational mode tests the full exact kernel basis.
std::vector<uint64_t> r_shadow(const Complex& y, FieldChoice field,
                               uint64_t seed = 0, uint32_t functionals = 4);
uint64_t r_shadow_size(const Complex& y, FieldChoice field, uint64_t seed = 0,
                       uint32_t functionals = 4);

enum class Regime { collapsible_or_gravel, acyclic_except_gravel, cyclic };

Regime classify_regime(const Complex& y,
                       FieldChoice field = FieldChoice::prime());

// vertex sets of boundary-of-(d+1)-simplex configurations contained in y
std::vector<std::vector<uint32_t>> find_boundary_simplices(const Complex& y);

}  // namespace ydsim
