#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "ydsim/boundary.hpp"
#include "ydsim/incidence.hpp"
#include "ydsim/sampling.hpp"

using namespace ydsim;

namespace {

// brute-force rational rank oracle, independent of the library eliminators
using Rat = boost::multiprecision::cpp_rational;

uint64_t brute_rank(std::vector<std::vector<Rat>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<std::vector<Rat>> densify(const SparseBoundary& sb) {
  std::vector<std::vector<Rat>> m(sb.rows, std::vector<Rat>(sb.cols, 0));
  for (uint64_t c = 0; c < sb.cols; ++c)
    for (uint32_t i = 0; i < sb.entries_per_col; ++i) {
      uint64_t e = c * sb.entries_per_col + i;
      m[sb.row_idx[e]][c] = sb.sign[e];
    }
  return m;
}

}  // namespace

TEST_CASE("boundary_faces of a triangle") {
  std::vector<uint32_t> tri{0, 1, 2};
  auto bd = boundary_faces(tri);
  REQUIRE(bd.size() == 3);
  CHECK(bd[0].first == std::vector<uint32_t>{1, 2});
  CHECK(bd[0].second == 1);
  CHECK(bd[1].first == std::vector<uint32_t>{0, 2});
  CHECK(bd[1].second == -1);
  CHECK(bd[2].first == std::vector<uint32_t>{0, 1});
  CHECK(bd[2].second == 1);
}

TEST_CASE("boundary_faces signs alternate and sub-faces are distinct") {
  std::vector<uint32_t> sigma{1, 3, 4, 7};
  auto bd = boundary_faces(sigma);
  for (size_t i = 0; i < bd.size(); ++i) {
    CHECK(bd[i].second == (i % 2 == 0 ? 1 : -1));
    for (size_t j = i + 1; j < bd.size(); ++j) CHECK(bd[i].first != bd[j].first);
  }
}

TEST_CASE("boundary of boundary cancels") {
  // expand both boundary applications on [0,1,2,3] and verify cancellation
  std::vector<uint32_t> sigma{0, 1, 2, 3};
  std::map<std::vector<uint32_t>, int> acc;
  for (auto& [tri, s1] : boundary_faces(sigma))
    for (auto& [edge, s2] : boundary_faces(tri)) acc[edge] += s1 * s2;
  for (auto& [edge, coeff] : acc) CHECK(coeff == 0);
}

TEST_CASE("incidence on a single 2-face") {
  Complex y(3, 2, {0});
  IncidenceIndex idx(y);
  CHECK(idx.sub_count() == 3);
  for (uint32_t s = 0; s < 3; ++s) CHECK(idx.degree(s) == 1);
  CHECK(idx.degree_sum() == 3);
}

TEST_CASE("incidence on the boundary of a 3-simplex") {
  // all four 2-faces of {0,1,2,3}
  Complex y(4, 2, {0, 1, 2, 3});
  IncidenceIndex idx(y);
  CHECK(idx.sub_count() == 6);
  for (uint32_t s = 0; s < idx.sub_count(); ++s) CHECK(idx.degree(s) == 2);
}

TEST_CASE("handshake identity on a random complex") {
  SampleConfig cfg;
  cfg.n = 50;
  cfg.d = 2;
  cfg.c = 3.0;
  cfg.seed = 7;
  Complex y = sample_binomial(cfg);
  IncidenceIndex idx(y);
  CHECK(idx.degree_sum() == 3 * y.f_d());
}

TEST_CASE("boundary matrix of a single face") {
  Complex y(3, 2, {0});
  SparseBoundary m = boundary_matrix(y);
  CHECK(m.rows == 3);
  CHECK(m.cols == 1);
  REQUIRE(m.entry_count() == 3);
  CHECK(m.sign[0] == 1);
  CHECK(m.sign[1] == -1);
  CHECK(m.sign[2] == 1);
  CHECK(brute_rank(densify(m)) == 1);
}

TEST_CASE("boundary matrix column sign pattern") {
  SampleConfig cfg;
  cfg.n = 12;
  cfg.d = 3;
  cfg.c = 4.0;
  cfg.seed = 3;
  Complex y = sample_binomial(cfg);
  SparseBoundary m = boundary_matrix(y);
  REQUIRE(m.entries_per_col == 4);
  CHECK(m.entry_count() == 4 * m.cols);
  for (uint64_t c = 0; c < m.cols; ++c)
    for (uint32_t i = 0; i < 4; ++i)
      CHECK(m.sign[c * 4 + i] == (i % 2 == 0 ? 1 : -1));
}

TEST_CASE("boundary of the 3-simplex boundary has rank 3") {
  Complex y(4, 2, {0, 1, 2, 3});
  SparseBoundary m = boundary_matrix(y);
  CHECK(m.rows == 6);
  CHECK(m.cols == 4);
  CHECK(brute_rank(densify(m)) == 3);  // kernel dimension 1
}

TEST_CASE("full 2-skeleton on 5 vertices has rank 6") {
  std::vector<uint64_t> all(10);
  for (uint64_t i = 0; i < 10; ++i) all[i] = i;
  Complex y(5, 2, all);
  SparseBoundary m = boundary_matrix(y);
  CHECK(m.rows == 10);
  CHECK(m.cols == 10);
  CHECK(brute_rank(densify(m)) == 6);  // kernel dimension 4 = C(4,3)
}

TEST_CASE("matrix product of consecutive boundaries vanishes") {
  // d2 of the full 2-skeleton against d1 of the full graph on 5 vertices
  std::vector<uint64_t> all(10);
  for (uint64_t i = 0; i < 10; ++i) all[i] = i;
  Complex y2(5, 2, all);
  SparseBoundary d2 = boundary_matrix(y2);
  Complex y1(5, 1, all);  // edges as top faces of a 1-complex
  SparseBoundary d1 = boundary_matrix(y1);
  auto m1 = densify(d1), m2 = densify(d2);
  for (size_t i = 0; i < m1.size(); ++i)
    for (size_t j = 0; j < m2[0].size(); ++j) {
      Rat acc = 0;
      for (size_t k = 0; k < m2.size(); ++k) acc += m1[i][k] * m2[k][j];
      CHECK(acc == 0);
    }
}
