#include "ydsim/rank.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "ydsim/rng.hpp"

namespace ydsim {

namespace {

// Montgomery arithmetic mod an odd prime n < 2^31 (R = 2^32)
struct Mont32 {
  uint32_t n;
  uint32_t ninv;  // -n^{-1} mod 2^32
  uint32_t r2;    // R^2 mod n

  explicit Mont32(uint32_t prime) : n(prime) {
    if (prime < 3 || prime % 2 == 0)
      throw std::invalid_argument("Mont32: prime must be odd and > 2");
    uint32_t inv = prime;  // Newton iteration for inverse mod 2^32
    for (int i = 0; i < 5; ++i) inv *= 2 - prime * inv;
    ninv = ~inv + 1;  // -inv
    uint64_t r = (1ull << 32) % prime;
    r2 = static_cast<uint32_t>((r * r) % prime);
  }

  uint32_t redc(uint64_t t) const {
    uint32_t m = static_cast<uint32_t>(t) * ninv;
    uint64_t u = (t + static_cast<uint64_t>(m) * n) >> 32;
    return u >= n ? static_cast<uint32_t>(u - n) : static_cast<uint32_t>(u);
  }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return redc(static_cast<uint64_t>(a) * b);
  }
  uint32_t to_mont(uint32_t x) const { return mul(x, r2); }
  uint32_t from_mont(uint32_t x) const { return redc(x); }
  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= n ? s - n : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const {
    return a >= b ? a - b : a + n - b;
  }
  uint32_t pow(uint32_t base_mont, uint64_t e) const {
    uint32_t acc = to_mont(1);
    while (e) {
      if (e & 1) acc = mul(acc, base_mont);
      base_mont = mul(base_mont, base_mont);
      e >>= 1;
    }
    return acc;
  }
  uint32_t inv(uint32_t a_mont) const { return pow(a_mont, n - 2); }
};

struct Ent {
  uint32_t col;
  uint32_t val;  // Montgomery form
};

struct DenseBlock {
  std::vector<uint32_t> data;
  uint64_t rows = 0, cols = 0;
};

}  // namespace

SparseRows boundary_rows(const SparseBoundary& m, bool transpose) {
  SparseRows rows;
  const uint32_t epc = m.entries_per_col;
  if (!transpose) {
    rows.resize(m.rows);
    for (uint64_t c = 0; c < m.cols; ++c)
      for (uint32_t i = 0; i < epc; ++i) {
        uint64_t e = c * epc + i;
        rows[m.row_idx[e]].push_back(
            {static_cast<uint32_t>(c), m.sign[e]});
      }
  } else {
    rows.resize(m.cols);
    for (uint64_t c = 0; c < m.cols; ++c)
      for (uint32_t i = 0; i < epc; ++i) {
        uint64_t e = c * epc + i;
        rows[c].push_back({static_cast<uint32_t>(m.row_idx[e]), m.sign[e]});
      }
    for (auto& r : rows) std::sort(r.begin(), r.end());
  }
  return rows;
}

EchelonModP eliminate_mod_p(SparseRows input, uint64_t num_cols,
                            uint32_t prime, const ModEliminationOptions& opts) {
  const Mont32 fp(prime);
  const uint32_t one = fp.to_mont(1);
  const uint32_t neg_one = fp.sub(0, one);

  EchelonModP result;
  result.prime = prime;
  result.rows = input.size();
  result.cols = num_cols;

  const size_t nr = input.size();
  std::vector<std::vector<Ent>> rows(nr);
  std::vector<uint32_t> col_count(num_cols, 0);
  std::vector<std::vector<uint32_t>> col_rows(num_cols);
  std::vector<uint8_t> row_done(nr, 0), col_done(num_cols, 0);

  for (size_t r = 0; r < nr; ++r) {
    auto& src = input[r];
    std::sort(src.begin(), src.end());
    rows[r].reserve(src.size());
    for (auto [c, s] : src) {
      rows[r].push_back({c, s > 0 ? one : neg_one});
      ++col_count[c];
      col_rows[c].push_back(static_cast<uint32_t>(r));
    }
    src.clear();
    src.shrink_to_fit();
  }

  using QE = std::pair<uint32_t, uint32_t>;  // (weight, row)
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  for (size_t r = 0; r < nr; ++r)
    pq.push({static_cast<uint32_t>(rows[r].size()), static_cast<uint32_t>(r)});

  uint64_t live_rows = nr, live_cols = num_cols;
  std::vector<Ent> merged;
  bool go_dense = false;

  auto compact = [&](uint32_t r) {
    auto& R = rows[r];
    size_t w = 0;
    for (size_t i = 0; i < R.size(); ++i)
      if (!col_done[R[i].col]) R[w++] = R[i];
    R.resize(w);
  };

  while (!pq.empty()) {
    auto [w, r] = pq.top();
    pq.pop();
    if (row_done[r]) continue;
    compact(r);
    if (rows[r].size() != w) {
      if (rows[r].empty()) {
        row_done[r] = 1;
        --live_rows;
      } else {
        pq.push({static_cast<uint32_t>(rows[r].size()), r});
      }
      continue;
    }
    if (w == 0) {  // structurally empty row (e.g. exposed face)
      row_done[r] = 1;
      --live_rows;
      continue;
    }
    if (w > opts.dense_switch_fraction * live_cols && live_cols > 96 &&
        live_rows > 8) {
      go_dense = true;
      break;
    }

    // pivot column: fewest live entries
    uint32_t pc = rows[r][0].col, pcount = UINT32_MAX, pval = 0;
    for (const auto& e : rows[r])
      if (col_count[e.col] < pcount) {
        pcount = col_count[e.col];
        pc = e.col;
        pval = e.val;
      }

    row_done[r] = 1;
    col_done[pc] = 1;
    --live_rows;
    --live_cols;
    ++result.rank;
    for (const auto& e : rows[r]) --col_count[e.col];

    const uint32_t factor_base = fp.inv(pval);
    auto& pivot_row = rows[r];

    for (uint32_t rr : col_rows[pc]) {
      if (row_done[rr] || rr == r) continue;
      auto& R = rows[rr];
      // locate live entry at pc (the occupancy list may be stale)
      uint32_t val = 0;
      bool found = false;
      for (const auto& e : R)
        if (e.col == pc) {
          val = e.val;
          found = true;
          break;
        }
      if (!found) continue;
      const uint32_t f = fp.mul(val, factor_base);
      // merged = R - f * pivot_row, skipping dead columns
      merged.clear();
      size_t i = 0, j = 0;
      while (i < R.size() || j < pivot_row.size()) {
        uint32_t ci = i < R.size() ? R[i].col : UINT32_MAX;
        uint32_t cj = j < pivot_row.size() ? pivot_row[j].col : UINT32_MAX;
        if (ci < cj) {
          if (!col_done[ci]) merged.push_back(R[i]);
          else --col_count[ci];
          ++i;
        } else if (cj < ci) {
          if (!col_done[cj]) {
            uint32_t nv = fp.sub(0, fp.mul(f, pivot_row[j].val));
            merged.push_back({cj, nv});
            ++col_count[cj];
            col_rows[cj].push_back(rr);
          }
          ++j;
        } else {
          if (!col_done[ci]) {
            uint32_t nv = fp.sub(R[i].val, fp.mul(f, pivot_row[j].val));
            if (nv == 0) --col_count[ci];
            else merged.push_back({ci, nv});
          } else {
            --col_count[ci];
          }
          ++i;
          ++j;
        }
      }
      R.assign(merged.begin(), merged.end());
      if (R.empty()) {
        row_done[rr] = 1;
        --live_rows;
      } else {
        pq.push({static_cast<uint32_t>(R.size()), rr});
      }
    }
    col_rows[pc].clear();
    col_rows[pc].shrink_to_fit();

    if (opts.keep_echelon) {
      EchelonRowModP er;
      er.pivot_col = pc;
      er.entries.reserve(pivot_row.size());
      for (const auto& e : pivot_row)
        er.entries.push_back({e.col, fp.from_mont(e.val)});
      result.echelon.push_back(std::move(er));
    }
    rows[r].clear();
    rows[r].shrink_to_fit();
  }

  if (go_dense && live_rows > 0 && live_cols > 0) {
    // gather live rows/cols into a dense block
    std::vector<uint32_t> col_map(num_cols, UINT32_MAX), cols_of;
    for (uint32_t c = 0; c < num_cols; ++c)
      if (!col_done[c]) {
        col_map[c] = static_cast<uint32_t>(cols_of.size());
        cols_of.push_back(c);
      }
    std::vector<uint32_t> rows_of;
    for (size_t r = 0; r < nr; ++r)
      if (!row_done[r]) rows_of.push_back(static_cast<uint32_t>(r));

    const uint64_t R = rows_of.size(), C = cols_of.size();
    if (R * C * 4 > opts.max_dense_bytes)
      throw std::runtime_error("eliminate_mod_p: dense block too large");
    DenseBlock blk;
    blk.rows = R;
    blk.cols = C;
    blk.data.assign(R * C, 0);
    for (uint64_t i = 0; i < R; ++i) {
      for (const auto& e : rows[rows_of[i]])
        if (col_map[e.col] != UINT32_MAX)
          blk.data[i * C + col_map[e.col]] = e.val;
      rows[rows_of[i]].clear();
      rows[rows_of[i]].shrink_to_fit();
    }

    uint64_t piv = 0;
    for (uint64_t c = 0; c < C && piv < R; ++c) {
      uint64_t sel = UINT64_MAX;
      for (uint64_t i = piv; i < R; ++i)
        if (blk.data[i * C + c]) {
          sel = i;
          break;
        }
      if (sel == UINT64_MAX) continue;
      if (sel != piv)
        std::swap_ranges(blk.data.begin() + sel * C + c,
                         blk.data.begin() + (sel + 1) * C,
                         blk.data.begin() + piv * C + c);
      const uint32_t inv = fp.inv(blk.data[piv * C + c]);
      const uint32_t* prow = &blk.data[piv * C];
      for (uint64_t i = piv + 1; i < R; ++i) {
        uint32_t* row = &blk.data[i * C];
        uint32_t v = row[c];
        if (!v) continue;
        const uint32_t f = fp.mul(v, inv);
        row[c] = 0;
        for (uint64_t j = c + 1; j < C; ++j)
          row[j] = fp.sub(row[j], fp.mul(f, prow[j]));
      }
      if (opts.keep_echelon) {
        EchelonRowModP er;
        er.pivot_col = cols_of[c];
        for (uint64_t j = c; j < C; ++j)
          if (prow[j]) er.entries.push_back({cols_of[j], fp.from_mont(prow[j])});
        result.echelon.push_back(std::move(er));
      }
      ++piv;
      ++result.rank;
    }
  }

  if (opts.keep_echelon) {
    result.col_is_pivot.assign(num_cols, 0);
    for (const auto& er : result.echelon) result.col_is_pivot[er.pivot_col] = 1;
  }
  return result;
}

uint64_t rank_mod_p(const SparseBoundary& m, uint32_t prime) {
  return eliminate_mod_p(boundary_rows(m, false), m.cols, prime, {}).rank;
}

std::vector<uint32_t> sample_kernel_mod_p(const EchelonModP& e, uint64_t seed) {
  if (e.col_is_pivot.empty() && e.rank > 0)
    throw std::logic_error("sample_kernel_mod_p: echelon was not kept");
  const Mont32 fp(e.prime);
  auto rng = SplitMix64::substream(seed, 0x6b65726eULL);
  std::vector<uint32_t> v(e.cols, 0);  // plain residues
  for (uint64_t c = 0; c < e.cols; ++c)
    if (!e.col_is_pivot[c])
      v[c] = static_cast<uint32_t>(rng.next_below(e.prime));
  // echelon rows are triangular w.r.t. pivot order: each references only
  // later pivots and free columns
  for (size_t r = e.echelon.size(); r-- > 0;) {
    const auto& er = e.echelon[r];
    uint64_t acc = 0;  // delayed reduction: sum of 62-bit products
    uint32_t pval = 1;
    for (const auto& [col, val] : er.entries) {
      if (col == er.pivot_col) {
        pval = val;
        continue;
      }
      acc += static_cast<uint64_t>(val) * v[col] % e.prime;
      if (acc >= (1ull << 62)) acc %= e.prime;
    }
    uint32_t s = static_cast<uint32_t>(acc % e.prime);
    // v[pivot] = -s / pval
    uint32_t inv = fp.from_mont(fp.inv(fp.to_mont(pval)));
    uint64_t t = static_cast<uint64_t>(s) * inv % e.prime;
    v[er.pivot_col] = t == 0 ? 0 : e.prime - static_cast<uint32_t>(t);
  }
  return v;
}

}  // namespace ydsim
