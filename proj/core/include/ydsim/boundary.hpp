#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ydsim/complex.hpp"

namespace ydsim {

// Signed incidence matrix of the boundary operator: rows are (d-1)-faces,
// columns are d-faces in colex order, and the column of sigma=(v_0,...,v_d)
// has sign (-1)^i at the row of sigma with v_i dropped (sorted-vertex
// orientation). Exactly d+1 entries per column, stored column-major.
struct SparseBoundary {
  uint64_t rows = 0;
  uint64_t cols = 0;
  std::vector<uint64_t> row_idx;  // (d+1)*cols entries, column-major
  std::vector<int8_t> sign;       // parallel to row_idx
  uint32_t entries_per_col = 0;   // d+1

  uint64_t entry_count() const { return row_idx.size(); }
};

// Boundary matrix of Y with rows indexed by all C(n,d) (d-1)-faces (row
// index = colex rank).
SparseBoundary boundary_matrix(const Complex& y);

// Variant with rows restricted to a sorted list of retained (d-1)-face
// ranks; every sub-face of every d-face of Y must appear in the list.
SparseBoundary boundary_matrix_retained(const Complex& y,
                                        const std::vector<uint64_t>& retained);

}  // namespace ydsim
