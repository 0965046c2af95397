#include <algorithm>
#include <queue>

#include "ydsim/rank.hpp"

namespace ydsim {

namespace {

using ExactRow = std::vector<std::pair<uint32_t, BigInt>>;

BigInt row_content(const ExactRow& r) {
  BigInt g = 0;
  for (const auto& [c, v] : r) {
    g = boost::multiprecision::gcd(g, v);
    if (g == 1) break;
  }
  return g;
}

}  // namespace

EchelonExact eliminate_exact(std::vector<ExactRow> rows, uint64_t num_cols,
                             bool keep_echelon) {
  EchelonExact result;
  result.rows = rows.size();
  result.cols = num_cols;

  const size_t nr = rows.size();
  std::vector<uint32_t> col_count(num_cols, 0);
  std::vector<std::vector<uint32_t>> col_rows(num_cols);
  std::vector<uint8_t> row_done(nr, 0), col_done(num_cols, 0);

  for (size_t r = 0; r < nr; ++r) {
    std::sort(rows[r].begin(), rows[r].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [c, v] : rows[r]) {
      ++col_count[c];
      col_rows[c].push_back(static_cast<uint32_t>(r));
    }
  }

  using QE = std::pair<uint32_t, uint32_t>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  for (size_t r = 0; r < nr; ++r)
    pq.push({static_cast<uint32_t>(rows[r].size()), static_cast<uint32_t>(r)});

  ExactRow merged;
  auto compact = [&](uint32_t r) {
    auto& R = rows[r];
    size_t w = 0;
    for (size_t i = 0; i < R.size(); ++i)
      if (!col_done[R[i].first]) {
        if (w != i) R[w] = std::move(R[i]);
        ++w;
      }
    R.resize(w);
  };

  while (!pq.empty()) {
    auto [w, r] = pq.top();
    pq.pop();
    if (row_done[r]) continue;
    compact(r);
    if (rows[r].size() != w) {
      if (rows[r].empty()) row_done[r] = 1;
      else pq.push({static_cast<uint32_t>(rows[r].size()), r});
      continue;
    }
    if (w == 0) {
      row_done[r] = 1;
      continue;
    }

    uint32_t pc = rows[r][0].first, pcount = UINT32_MAX;
    for (const auto& [c, v] : rows[r])
      if (col_count[c] < pcount) {
        pcount = col_count[c];
        pc = c;
      }
    const BigInt* pval = nullptr;
    for (const auto& [c, v] : rows[r])
      if (c == pc) pval = &v;

    row_done[r] = 1;
    col_done[pc] = 1;
    ++result.rank;
    for (const auto& [c, v] : rows[r]) --col_count[c];

    auto& pivot_row = rows[r];
    for (uint32_t rr : col_rows[pc]) {
      if (row_done[rr] || rr == r) continue;
      auto& R = rows[rr];
      const BigInt* val = nullptr;
      for (const auto& [c, v] : R)
        if (c == pc) val = &v;
      if (!val) continue;
      // R <- pval*R - val*pivot_row (integer-preserving), then divide by
      // the content
      merged.clear();
      size_t i = 0, j = 0;
      while (i < R.size() || j < pivot_row.size()) {
        uint32_t ci = i < R.size() ? R[i].first : UINT32_MAX;
        uint32_t cj = j < pivot_row.size() ? pivot_row[j].first : UINT32_MAX;
        if (ci < cj) {
          if (!col_done[ci]) merged.emplace_back(ci, R[i].second * (*pval));
          else --col_count[ci];
          ++i;
        } else if (cj < ci) {
          if (!col_done[cj]) {
            merged.emplace_back(cj, -(*val) * pivot_row[j].second);
            ++col_count[cj];
            col_rows[cj].push_back(rr);
          }
          ++j;
        } else {
          if (!col_done[ci]) {
            BigInt nv = R[i].second * (*pval) - (*val) * pivot_row[j].second;
            if (nv == 0) --col_count[ci];
            else merged.emplace_back(ci, std::move(nv));
          } else {
            --col_count[ci];
          }
          ++i;
          ++j;
        }
      }
      BigInt g = row_content(merged);
      if (g > 1)
        for (auto& [c, v] : merged) v /= g;
      R.assign(std::make_move_iterator(merged.begin()),
               std::make_move_iterator(merged.end()));
      if (R.empty()) row_done[rr] = 1;
      else pq.push({static_cast<uint32_t>(R.size()), rr});
    }
    col_rows[pc].clear();
    col_rows[pc].shrink_to_fit();

    if (keep_echelon) {
      EchelonRowExact er;
      er.pivot_col = pc;
      er.entries.assign(pivot_row.begin(), pivot_row.end());
      result.echelon.push_back(std::move(er));
    }
    pivot_row.clear();
    pivot_row.shrink_to_fit();
  }

  if (keep_echelon) {
    result.col_is_pivot.assign(num_cols, 0);
    for (const auto& er : result.echelon) result.col_is_pivot[er.pivot_col] = 1;
  }
  return result;
}

namespace {

std::vector<ExactRow> exact_boundary_rows(const SparseBoundary& m,
                                          bool transpose) {
  std::vector<ExactRow> rows(transpose ? m.cols : m.rows);
  const uint32_t epc = m.entries_per_col;
  for (uint64_t c = 0; c < m.cols; ++c)
    for (uint32_t i = 0; i < epc; ++i) {
      uint64_t e = c * epc + i;
      if (!transpose)
        rows[m.row_idx[e]].emplace_back(static_cast<uint32_t>(c),
                                        BigInt(m.sign[e]));
      else
        rows[c].emplace_back(static_cast<uint32_t>(m.row_idx[e]),
                             BigInt(m.sign[e]));
    }
  return rows;
}

}  // namespace

uint64_t rank_exact(const SparseBoundary& m) {
  return eliminate_exact(exact_boundary_rows(m, false), m.cols, false).rank;
}

std::vector<std::vector<BigInt>> kernel_basis_exact(const SparseBoundary& m,
                                                    bool transpose) {
  const uint64_t cols = transpose ? m.rows : m.cols;
  EchelonExact e =
      eliminate_exact(exact_boundary_rows(m, transpose), cols, true);

  using Rational = boost::multiprecision::cpp_rational;
  std::vector<std::vector<BigInt>> basis;
  for (uint64_t free_col = 0; free_col < cols; ++free_col) {
    if (e.col_is_pivot[free_col]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free_col] = 1;
    for (size_t r = e.echelon.size(); r-- > 0;) {
      const auto& er = e.echelon[r];
      Rational acc = 0;
      Rational pval = 1;
      for (const auto& [c, val] : er.entries) {
        if (c == er.pivot_col) pval = Rational(val);
        else acc += Rational(val) * v[c];
      }
      v[er.pivot_col] = -acc / pval;
    }
    // scale to a content-reduced integer vector
    BigInt lcm_den = 1;
    for (const auto& x : v)
      lcm_den = boost::multiprecision::lcm(lcm_den,
                                           boost::multiprecision::denominator(x));
    std::vector<BigInt> iv(cols);
    BigInt g = 0;
    for (uint64_t c = 0; c < cols; ++c) {
      iv[c] = boost::multiprecision::numerator(v[c]) *
              (lcm_den / boost::multiprecision::denominator(v[c]));
      g = boost::multiprecision::gcd(g, iv[c]);
    }
    if (g > 1)
      for (auto& x : iv) x /= g;
    basis.push_back(std::move(iv));
  }
  return basis;
}

}  // namespace ydsim
