#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ydsim/boundary.hpp"

namespace ydsim {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// exact rank mod a prime q < 2^31
//
// Hybrid elimination: a Markowitz-style sparse phase (min-weight row, then
// min-count column) runs until the active matrix turns dense, then a dense
// Montgomery-arithmetic block finishes. Boundary matrices of random cores
// stay sparse for ~90% of their pivots and leave a dense tail of a few
// thousand columns; the split keeps both phases near their best case.
// ---------------------------------------------------------------------------

constexpr uint32_t kDefaultPrime = 2147483647u;  // 2^31 - 1

struct ModEliminationOptions {
  bool keep_echelon = false;           // retain rows for kernel sampling
  double dense_switch_fraction = 0.10; // row weight / live cols trigger
  uint64_t max_dense_bytes = 3ull << 30;
};

struct EchelonRowModP {
  uint32_t pivot_col = 0;
  std::vector<std::pair<uint32_t, uint32_t>> entries;  // (col, residue)
};

struct EchelonModP {
  uint32_t prime = kDefaultPrime;
  uint64_t rows = 0, cols = 0;
  uint64_t rank = 0;
  std::vector<EchelonRowModP> echelon;   // pivot order; only if keep_echelon
  std::vector<uint8_t> col_is_pivot;     // only if keep_echelon
};

// sparse row input: entries (col, signed unit value)
using SparseRows = std::vector<std::vector<std::pair<uint32_t, int8_t>>>;

EchelonModP eliminate_mod_p(SparseRows rows, uint64_t num_cols, uint32_t prime,
                            const ModEliminationOptions& opts = {});

// rows of the boundary matrix, or of its transpose
SparseRows boundary_rows(const SparseBoundary& m, bool transpose);

uint64_t rank_mod_p(const SparseBoundary& m, uint32_t prime);

// uniformly random element of the null space of the eliminated matrix
// (free coordinates random, pivots back-substituted); length = cols
std::vector<uint32_t> sample_kernel_mod_p(const EchelonModP& e, uint64_t seed);

// ---------------------------------------------------------------------------
// exact rank over the rationals
//
// Fraction-free integer elimination: the update keeps rows integral
// (row_i <- pivot*row_i - coeff*row_pivot) and divides each result by the
// gcd of its entries. Intended for desk-scale matrices; entries are exact
// minors up to content, so very large dense blocks are out of reach by
// design.
// ---------------------------------------------------------------------------

struct EchelonRowExact {
  uint32_t pivot_col = 0;
  std::vector<std::pair<uint32_t, BigInt>> entries;
};

struct EchelonExact {
  uint64_t rows = 0, cols = 0;
  uint64_t rank = 0;
  std::vector<EchelonRowExact> echelon;  // only if keep_echelon
  std::vector<uint8_t> col_is_pivot;
};

EchelonExact eliminate_exact(
    std::vector<std::vector<std::pair<uint32_t, BigInt>>> rows,
    uint64_t num_cols, bool keep_echelon = false);

uint64_t rank_exact(const SparseBoundary& m);

// full null-space basis over Q, returned as integer vectors (each scaled to
// integral content-reduced form); length of each = cols
std::vector<std::vector<BigInt>> kernel_basis_exact(const SparseBoundary& m,
                                                    bool transpose);

}  // namespace ydsim
