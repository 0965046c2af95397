#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ydsim/thresholds.hpp"

using namespace ydsim;
using doctest::Approx;

TEST_CASE("psi values and domain") {
  // -ln(1/e) / (1-1/e)^2 = 1/(1-1/e)^2
  CHECK(psi(std::exp(-1.0), 2) == Approx(2.5026503).epsilon(1e-6));
  CHECK_THROWS_AS(psi(0.0, 2), std::domain_error);
  CHECK_THROWS_AS(psi(1.0, 2), std::domain_error);
  // near x -> 1 psi approaches 1 for d=1
  CHECK(psi(1.0 - 1e-8, 1) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gamma_d against the published table") {
  CHECK(gamma_d(2) == Approx(2.455).epsilon(5e-4));
  CHECK(gamma_d(3) == Approx(3.089).epsilon(5e-4));
  CHECK(gamma_d(4) == Approx(3.509).epsilon(5e-4));
  CHECK(gamma_d(5) == Approx(3.822).epsilon(5e-4));
  CHECK(gamma_d(10) == Approx(4.749).epsilon(5e-4));
  CHECK(gamma_d(100) == Approx(7.555).epsilon(5e-4));
  CHECK(gamma_d(1000) == Approx(10.175).epsilon(5e-4));
  CHECK(gamma_d(1) == 1.0);
}

TEST_CASE("c_d against the published table") {
  CHECK(c_d(2) == Approx(2.754).epsilon(5e-4));
  CHECK(c_d(3) == Approx(3.907).epsilon(5e-4));
  CHECK(c_d(4) == Approx(4.962).epsilon(5e-4));
  CHECK(c_d(5) == Approx(5.984).epsilon(5e-4));
  CHECK(log10_gap_c_d(10) == Approx(-3.7354).epsilon(1e-3));
  CHECK(log10_gap_c_d(100) == Approx(-41.8594).epsilon(1e-3));
  CHECK(log10_gap_c_d(1000) == Approx(-431.7283).epsilon(1e-3));
  // large-d asymptotic: c_d ~ (d+1)(1 - e^{-(d+1)})
  for (uint32_t d : {10u, 20u, 40u}) {
    double asym = (d + 1) * (1.0 - std::exp(-static_cast<double>(d + 1)));
    CHECK(c_d(d) == Approx(asym).epsilon(1e-6));
  }
  // gamma_d ~ ln d up to a modest factor at large d
  CHECK(gamma_d(1000) / std::log(1000.0) == Approx(1.0).epsilon(0.5));
}

TEST_CASE("gamma < c_d < d+1 across dimensions") {
  for (uint32_t d = 2; d <= 1000; d = d < 20 ? d + 1 : d * 3) {
    double g = gamma_d(d), cd = c_d(d);
    CHECK(g < cd);
    CHECK(cd <= d + 1.0);
    // the strict gap to d+1 lives in the transformed coordinate once c_d
    // rounds to d+1 in doubles
    CHECK(log10_gap_c_d(d) < 0.0);
    CHECK(std::isfinite(log10_gap_c_d(d)));
  }
}

TEST_CASE("poisson tail") {
  CHECK(poisson_tail(1, 0.0) == 0.0);
  CHECK(poisson_tail(0, 0.0) == 1.0);
  CHECK(poisson_tail(2, 0.0) == 0.0);
  // Psi_2(lambda) = 1 - e^-l (1+l)
  double l = 1.843;
  CHECK(poisson_tail(2, l) ==
        Approx(1.0 - std::exp(-l) * (1 + l)).epsilon(1e-12));
  CHECK(poisson_tail(2, 1.843) == Approx(0.550).epsilon(2e-3));
  CHECK(poisson_tail(2, 1.0) < poisson_tail(2, 2.0));  // monotone in lambda
}

TEST_CASE("t fixed point") {
  CHECK(t_fixed_point(0.5, 2) == 1.0);  // subcritical: only root is 1
  CHECK(t_fixed_point(2.0, 2) == 1.0);
  double t = t_fixed_point(3.0, 2);
  CHECK(t == Approx(0.0781091).epsilon(1e-5));
  // residual of the defining equation
  CHECK(std::fabs(t - std::exp(-3.0 * (1 - t) * (1 - t))) < 1e-10);
  // equivalent form 1 - t = Psi_1(c(1-t)^d)
  CHECK(1.0 - t ==
        Approx(poisson_tail(1, 3.0 * (1 - t) * (1 - t))).epsilon(1e-10));
}

TEST_CASE("t sequence") {
  auto ts = t_sequence(3.0, 2, 30);
  CHECK(ts[0] == Approx(std::exp(-3.0)).epsilon(1e-14));
  CHECK(ts[30] == Approx(t_fixed_point(3.0, 2)).epsilon(1e-5));
  for (size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] >= ts[i - 1]);
  auto slow = t_sequence(2.0, 2, 200);
  CHECK(slow[200] > 0.999);
}

TEST_CASE("fixed point roots") {
  auto sub = fixed_point_roots(2.0, 2);
  REQUIRE(sub.size() == 1);  // only t = 1
  CHECK(sub[0] == 1.0);
  auto super = fixed_point_roots(3.0, 2);
  REQUIRE(super.size() == 3);  // two interior roots plus t = 1
  CHECK(super[0] == Approx(0.0781091).epsilon(1e-5));
  CHECK(super[2] == 1.0);
}

TEST_CASE("regime densities in the cyclic regime") {
  RegimeDensities rd = regime_densities(3.0, 2);
  CHECK(rd.t == Approx(0.0781091).epsilon(1e-5));
  CHECK(rd.core_dminus1_density == Approx(0.7227401).epsilon(1e-5));
  CHECK(rd.core_d_density == Approx(0.7834992).epsilon(1e-5));
  CHECK(rd.betti_density == Approx(0.0607591).epsilon(1e-5));
  CHECK(rd.shadow_density == Approx(0.7834992).epsilon(1e-5));
}

TEST_CASE("regime densities in the intermediate regime") {
  RegimeDensities rd = regime_densities(2.6, 2);
  CHECK(rd.t == Approx(0.1589585).epsilon(1e-5));
  CHECK(rd.core_dminus1_density == Approx(0.5486990).epsilon(1e-5));
  CHECK(rd.betti_density == 0.0);
  CHECK(rd.shadow_density == Approx(0.5949114).epsilon(1e-5));
}

TEST_CASE("regime densities in the collapsible regime") {
  RegimeDensities rd = regime_densities(2.0, 2);
  CHECK(rd.t == 1.0);
  CHECK(rd.core_dminus1_density == 0.0);
  CHECK(rd.core_d_density == 0.0);
  CHECK(rd.betti_density == 0.0);
  CHECK(rd.shadow_density == 0.0);
  CHECK(rd.avg_core_degree == 0.0);
}

TEST_CASE("average core degree crosses d+1 exactly at c_d") {
  for (uint32_t d : {2u, 3u, 5u}) {
    double cd = c_d(d);
    CHECK(regime_densities(cd, d).avg_core_degree ==
          Approx(d + 1.0).epsilon(1e-6));
    CHECK(regime_densities(cd - 0.01, d).avg_core_degree < d + 1.0);
    CHECK(regime_densities(cd + 0.01, d).avg_core_degree > d + 1.0);
  }
}

TEST_CASE("betti density vanishes continuously at c_d from above") {
  double cd = c_d(2);
  double prev = regime_densities(cd + 0.2, 2).betti_density;
  for (double eps : {0.1, 0.05, 0.01, 0.001}) {
    double b = regime_densities(cd + eps, 2).betti_density;
    CHECK(b <= prev + 1e-12);
    prev = b;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("shadow densities jump discontinuously at the thresholds") {
  // C-shadow jump at gamma_2: from 0 to (1 - argmin)^3 = 0.366
  double g = gamma_d(2);
  CHECK(regime_densities(g - 1e-4, 2).shadow_density == 0.0);
  double c_jump = regime_densities(g + 1e-4, 2).shadow_density;
  CHECK(c_jump > 0.35);
  CHECK(c_jump == Approx(0.3660).epsilon(2e-2));
  // R-shadow jump at c_2: from ~0 to (1 - x_*)^3 = 0.689, the first-order
  // discontinuity exceeding one half
  double cd = c_d(2);
  RegimeDensities below = regime_densities(cd - 1e-4, 2);
  RegimeDensities above = regime_densities(cd + 1e-4, 2);
  CHECK(below.betti_density == 0.0);  // R-shadow density 0 below c_d
  CHECK(above.betti_density > 0.0);
  CHECK(above.shadow_density > 0.5);
  CHECK(above.shadow_density == Approx(0.6895).epsilon(2e-2));
}

TEST_CASE("two Betti expressions agree on a c grid") {
  // closed form g_d(c) vs core face-density difference, both from the module
  for (double c = c_d(2) + 1e-6; c < 9.0; c += 0.1) {
    RegimeDensities rd = regime_densities(c, 2);
    double diff = rd.core_d_density - rd.core_dminus1_density;
    CHECK(std::fabs(rd.betti_density - diff) < 1e-10);
  }
}

TEST_CASE("threshold table and boundary flags") {
  ThresholdTable t = make_threshold_table(2);
  CHECK(t.gamma < t.cd);
  CHECK(psi(t.xstar, 2) == Approx(t.cd).epsilon(1e-10));
  CHECK(regime_densities(t.gamma, 2).boundary_point);
  CHECK(regime_densities(t.cd, 2).boundary_point);
  CHECK(!regime_densities(3.0, 2).boundary_point);
}

TEST_CASE("ex_xT_bound") {
  CHECK(ex_xT_bound(2.0, 2) == Approx(1.0 / 3.0).epsilon(1e-9));
  // above c_d the interior root dominates the t=1 branch
  double v = ex_xT_bound(3.0, 2);
  CHECK(v == Approx(0.0607591).epsilon(1e-5));
  CHECK(v > 1.0 - 3.0 / 3.0);
  // consistency with the Betti density above c_d
  for (double c : {2.9, 3.3, 4.0}) {
    double lhs = ex_xT_bound(c, 2) - (1.0 - c / 3.0);
    CHECK(lhs == Approx(regime_densities(c, 2).betti_density).epsilon(1e-8));
  }
}
