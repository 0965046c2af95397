#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ydsim/rng.hpp"

namespace ydsim {

// Depth-truncated Poisson d-tree: alternating layers of (d-1)-face nodes and
// d-face nodes. Every (d-1)-face node at depth < depth spawns Poi(c) child
// d-faces; every d-face has exactly d child (d-1)-faces one level deeper.
// Node 0 is the root.
struct RootedTree {
  uint32_t d = 2;
  uint32_t depth = 0;
  // (d-1)-face nodes
  std::vector<uint32_t> sub_first_face;  // index into face_child_base
  std::vector<uint32_t> sub_face_count;
  std::vector<uint32_t> sub_depth;
  // d-face nodes: children are d consecutive sub nodes
  std::vector<uint32_t> face_child_base;

  uint64_t sub_count() const { return sub_first_face.size(); }
  uint64_t face_count() const { return face_child_base.size(); }
  uint32_t root_degree() const { return sub_face_count.empty() ? 0 : sub_face_count[0]; }
};

RootedTree sample_tree(double c, uint32_t d, uint32_t depth, uint64_t seed);

// delta_k: degree of the root after k phases of root-protected collapse.
// Exact whenever depth >= k+1; phases beyond the truncated horizon throw.
uint64_t rooted_collapse_tree(const RootedTree& t, uint32_t k);

// fraction of `trials` independent trees with delta_k = 0 (estimates t_k).
// Trees are explored lazily with early exits, so deep supercritical trees
// cost far less than their size.
double collapse_probability_empirical(double c, uint32_t d, uint32_t k,
                                      uint64_t trials, uint64_t seed);

// one lazy sample of delta_k from an implicit T_d(c)
uint64_t sample_delta_k(double c, uint32_t d, uint32_t k, SplitMix64& rng);

enum class LeafBoundary { zero, one };

// Atom at 0 of the root spectral measure via the reciprocal-sum recursion:
// leaves take the boundary constant; an internal value is 0 when any child
// d-face has all-zero children, otherwise 1/(1 + sum_j 1/sum_r x_{j,r}).
double x_tree(const RootedTree& t, LeafBoundary boundary);

// resolvent recursion at spectral parameter s != 0 (throws on s == 0);
// approaches x_tree as s -> 0
std::complex<double> h_recursion(const RootedTree& t, double s,
                                 std::complex<double> leaf_value);

struct PopulationResult {
  double mean_x = 0;       // estimate of E[x_T]
  double p_positive = 0;   // estimate of t = Pr[x_T > 0]
  double stderr_mean = 0;  // pool standard error of mean_x
};

// Population dynamics for the distributional fixed point of the recursion.
// With init = zero the positivity fraction follows the t_k recursion from
// t_0 = e^{-c} and lands on the smallest root: the physical branch below
// gamma_d and above c_d. With init = one the pool stays positive and tracks
// the t = 1 branch, whose mean 1 - c/(d+1) is the true expectation
// everywhere below c_d. The two runs bracket the intermediate window.
PopulationResult population_dynamics_x(double c, uint32_t d,
                                       uint64_t pool_size, uint32_t iterations,
                                       uint64_t seed,
                                       LeafBoundary init = LeafBoundary::zero);

}  // namespace ydsim
