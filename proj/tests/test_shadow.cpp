#include <cmath>
#include <algorithm>

#include "doctest.h"
#include "ydsim/collapse.hpp"
#include "ydsim/sampling.hpp"
#include "ydsim/shadow.hpp"
#include "ydsim/stats.hpp"
#include "ydsim/thresholds.hpp"

using namespace ydsim;

namespace {

Complex from_faces(uint32_t n, std::vector<std::vector<uint32_t>> faces) {
  std::vector<uint64_t> ranks;
  for (auto& f : faces) ranks.push_back(face_rank(f, n));
  return Complex(n, 2, std::move(ranks));
}

}  // namespace

TEST_CASE("missing face of a simplex boundary is in the C-shadow") {
  Complex y = from_faces(4, {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}});  // drop {0,1,2}
  uint64_t target = face_rank(std::vector<uint32_t>{0, 1, 2}, 4);
  auto sh = c_shadow(y);
  REQUIRE(sh.size() == 1);
  CHECK(sh[0] == target);
  CHECK(c_shadow_oracle(y) == sh);
}

TEST_CASE("empty complex has an empty C-shadow") {
  Complex y(4, 2, {});
  CHECK(c_shadow(y).empty());
  CHECK(c_shadow_size(y) == 0);
  CHECK(c_shadow_oracle(y).empty());
}

TEST_CASE("fast path equals the core-comparison oracle on random instances") {
  SplitMix64 seeds(404);
  for (int i = 0; i < 40; ++i) {
    SampleConfig cfg;
    cfg.n = 12;
    cfg.d = 2;
    cfg.c = 1.2 + 0.07 * i;
    cfg.seed = seeds.next();
    Complex y = sample_binomial(cfg);
    CHECK(c_shadow(y) == c_shadow_oracle(y));
  }
}

TEST_CASE("fast path equals the oracle exhaustively at n=5") {
  // every 2-complex on 5 vertices (all subsets of the 10 possible faces)
  for (uint32_t mask = 0; mask < (1u << 10); ++mask) {
    std::vector<uint64_t> ranks;
    for (uint32_t b = 0; b < 10; ++b)
      if (mask & (1u << b)) ranks.push_back(b);
    Complex y(5, 2, std::move(ranks));
    if (c_shadow(y) != c_shadow_oracle(y)) {
      CAPTURE(mask);
      REQUIRE(c_shadow(y) == c_shadow_oracle(y));
    }
  }
}

TEST_CASE("supercritical shadow density approaches the closed form" *
          doctest::test_suite("heavy")) {
  double t = t_fixed_point(3.0, 2);
  double target = (1 - t) * (1 - t) * (1 - t);
  RunningStat stat;
  for (uint64_t s = 0; s < 5; ++s) {
    SampleConfig cfg;
    cfg.n = 300;
    cfg.d = 2;
    cfg.c = 3.0;
    cfg.seed = 4200 + s;
    Complex y = sample_binomial(cfg);
    stat.add(static_cast<double>(c_shadow_size(y)) /
             static_cast<double>(binomial(300, 3)));
  }
  CHECK(std::fabs(stat.mean() - target) < 0.02);
}
