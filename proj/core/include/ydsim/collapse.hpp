#pragma once

#include <cstdint>
#include <vector>

#include "ydsim/complex.hpp"
#include "ydsim/incidence.hpp"

namespace ydsim {

// Which free face wins when several could collapse the same d-face inside
// one phase. The core is order-independent; the knob exists to test that.
enum class TieBreak { smallest_face_id, largest_face_id };

struct CollapsedPair {
  uint64_t tau_rank;    // the free (d-1)-face
  uint64_t sigma_rank;  // the d-face it collapsed
};

struct CoreResult {
  Complex core;
  uint64_t core_dminus1_count = 0;  // (d-1)-faces of degree >= 2 in the core
  uint32_t phases_used = 0;
  std::vector<CollapsedPair> collapsed_pairs;
  bool is_collapsible = false;  // core has no d-faces
  bool is_gravel = false;
  std::vector<std::vector<uint32_t>> gravel_components;  // vertex sets
};

struct GravelCheck {
  bool is_gravel = false;
  std::vector<std::vector<uint32_t>> components;
};

struct StripCounts {
  uint64_t f_dminus1 = 0;  // (d-1)-faces of positive degree
  uint64_t f_d = 0;
};

// Phase-synchronous collapse on a private copy of the incidence degrees.
// A phase freezes the set of free (non-root, degree-1) faces, then performs
// every collapse whose target d-face is still present, smaller tie-break
// FaceId first.
class CollapseEngine {
 public:
  explicit CollapseEngine(const IncidenceIndex& idx);

  void protect(uint32_t sub_index);  // roots are never selected as free

  // one phase; returns removed pair count
  uint64_t run_phase(TieBreak tb = TieBreak::smallest_face_id,
                     std::vector<CollapsedPair>* pairs = nullptr);
  // up to k phases (stops at the fixed point); returns phases that removed
  // something
  uint32_t run_phases(uint64_t k, TieBreak tb = TieBreak::smallest_face_id,
                      std::vector<CollapsedPair>* pairs = nullptr);

  bool face_alive(uint64_t f) const { return alive_[f] != 0; }
  int32_t sub_degree(uint32_t s) const { return deg_[s]; }
  uint64_t alive_count() const { return alive_count_; }
  const IncidenceIndex& index() const { return idx_; }

  std::vector<uint64_t> alive_face_ranks(const Complex& y) const;

 private:
  const IncidenceIndex& idx_;
  std::vector<int32_t> deg_;
  std::vector<uint8_t> alive_;
  std::vector<uint8_t> root_;
  std::vector<uint32_t> candidates_;  // subs that reached degree 1
  uint64_t alive_count_;
};

// R_k(Y); k may be huge to mean "to the fixed point"
Complex collapse_phases(const Complex& y, uint64_t k,
                        TieBreak tb = TieBreak::smallest_face_id);

CoreResult collapse_to_core(const Complex& y,
                            TieBreak tb = TieBreak::smallest_face_id);

// f_{d-1} and f_d of S_k = R_k with exposed (d-1)-faces removed
StripCounts strip_exposed_counts(const Complex& rk_state);

// Reusable workspace for repeated rooted-collapse queries against one
// incidence index; avoids re-zeroing complex-sized arrays per root.
class RootedScratch {
 public:
  explicit RootedScratch(const IncidenceIndex& idx);

 private:
  friend int64_t rooted_collapse_degree(const IncidenceIndex&, uint64_t,
                                        uint64_t, RootedScratch*);
  std::vector<uint32_t> sub_epoch_, face_epoch_;
  std::vector<uint32_t> sub_local_, face_local_;
  uint32_t epoch_ = 0;
};

// degree of tau after k phases of tau-rooted collapse. Works on a local
// ball of radius k+1 around tau (the k-phase outcome at the root only
// depends on that ball); pass a scratch when querying many roots.
int64_t rooted_collapse_degree(const Complex& y, uint64_t tau_rank,
                               uint64_t k);
int64_t rooted_collapse_degree(const IncidenceIndex& idx, uint64_t tau_rank,
                               uint64_t k, RootedScratch* scratch = nullptr);

GravelCheck is_gravel(const Complex& y);

}  // namespace ydsim
