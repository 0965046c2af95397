#pragma once

#include <cstdint>
#include <vector>

#include "ydsim/complex.hpp"

namespace ydsim {

// C-shadow of Y: the d-faces sigma not in Y whose addition enlarges the
// core, equivalently whose sigma survives the collapse of Y + sigma.
//
// The fast path collapses Y once and classifies every candidate against the
// frozen core: sigma is in the shadow iff each of its d+1 boundary faces
// either lies in the core (degree >= 2 there) or is rescued by protecting
// the candidate's boundary during a peel of the non-core debris. Debris
// components are independent across the (d-1)-faces they do not share, so
// single-root outcomes are precomputed per component and only candidates
// with two or more boundary faces in one component need a joint peel.
std::vector<uint64_t> c_shadow(const Complex& y);

// Reference oracle: recompute the core of Y + sigma for every candidate and
// compare against the core of Y.
std::vector<uint64_t> c_shadow_oracle(const Complex& y);

// count-only variant of the fast path (avoids storing millions of ranks)
uint64_t c_shadow_size(const Complex& y);

}  // namespace ydsim
