#pragma once

#include <cstdint>
#include <vector>

namespace ydsim {

// Closed-form constants and densities of the phase transition of
// Y_d(n, c/n): the collapsibility threshold gamma_d, the acyclicity
// threshold c_d, the survival fixed point t(c,d), and the limit densities of
// the core, Betti number and shadows derived from them.

// psi(x) = -ln(x) / (1-x)^d on (0,1); throws std::domain_error outside.
double psi(double x, uint32_t d);

// min of psi over (0,1); for d = 1 this is the infimum 1 (attained only in
// the limit x -> 1).
double gamma_d(uint32_t d, double tol = 1e-12);

// unique root in (0,1) of (d+1)(1-x) + (1+dx) ln x = 0, for d >= 2.
// Computed in y = ln x coordinates so tiny roots stay accurate.
double x_star(uint32_t d, double tol = 1e-12);

// c_d = psi(x_star)
double c_d(uint32_t d, double tol = 1e-12);

// log10(d+1 - c_d), stable even when c_d rounds to d+1 in doubles.
double log10_gap_c_d(uint32_t d, double tol = 1e-12);

// Psi_k(lambda) = Pr[Poi(lambda) >= k]
double poisson_tail(uint32_t k, double lambda);

// smallest positive root of t = exp(-c (1-t)^d); returns 1 when c <= gamma_d
double t_fixed_point(double c, uint32_t d, double tol = 1e-12);

// t_0 .. t_k of the recursion t_{-1} = 0, t_{j+1} = exp(-c (1-t_j)^d)
std::vector<double> t_sequence(double c, uint32_t d, uint32_t k);

// all roots of t = exp(-c(1-t)^d) in (0,1], by sign scan + bisection
std::vector<double> fixed_point_roots(double c, uint32_t d,
                                      double tol = 1e-12);

struct ThresholdTable {
  uint32_t d = 0;
  double gamma = 0;
  double cd = 0;
  double xstar = 0;
  double log10_gap = 0;  // log10(d+1 - c_d)
  double tolerance = 0;
};
ThresholdTable make_threshold_table(uint32_t d, double tol = 1e-12);

struct RegimeDensities {
  double c = 0;
  uint32_t d = 0;
  double t = 1;                      // t(c,d)
  double core_dminus1_density = 0;   // Psi_2(c(1-t)^d), per C(n,d)
  double core_d_density = 0;         // c(1-t)^{d+1}/(d+1), per C(n,d)
  double betti_density = 0;          // max(0, g_d(c)), per C(n,d)
  double shadow_density = 0;         // (1-t)^{d+1}, per C(n,d+1)
  double avg_core_degree = 0;        // limit conditional root degree
  bool boundary_point = false;       // c within tol-band of gamma_d or c_d
};
RegimeDensities regime_densities(double c, uint32_t d, double tol = 1e-12);

// max of t + c t (1-t)^d - c/(d+1) (1-(1-t)^{d+1}) over fixed-point roots
// t in (0,1]; equals 1 - c/(d+1) below c_d and exceeds it above.
double ex_xT_bound(double c, uint32_t d, double tol = 1e-12);

}  // namespace ydsim
