#include "ydsim/thresholds.hpp"

#include <cmath>
#include <stdexcept>

namespace ydsim {

double psi(double x, uint32_t d) {
  if (!(x > 0.0 && x < 1.0))
    throw std::domain_error("psi: x must lie in (0,1)");
  return -std::log(x) / std::pow(1.0 - x, static_cast<double>(d));
}

namespace {

// stationarity of psi: h(x) = (1-x) + d x ln x, single interior root for d>=2
double psi_argmin(uint32_t d, double tol) {
  auto h = [d](double x) { return (1.0 - x) + d * x * std::log(x); };
  double lo = 1e-300, hi = 1.0 - 1e-9;
  if (!(h(lo) > 0.0 && h(hi) < 0.0))
    throw std::runtime_error("gamma_d: stationarity bracket failed");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// x_star equation in y = ln x coordinates, written with expm1 so the
// near-zero tail keeps its sign
double xstar_equation(double y, uint32_t d) {
  double x = std::exp(y);
  return -(static_cast<double>(d) + 1.0) * std::expm1(y) + (1.0 + d * x) * y;
}

double xstar_y(uint32_t d, double tol) {
  if (d < 2) throw std::invalid_argument("x_star: requires d >= 2");
  double lo = -3.0 * (d + 1), hi = -1e-9;
  if (!(xstar_equation(lo, d) < 0.0 && xstar_equation(hi, d) > 0.0))
    throw std::runtime_error("x_star: bracket failed");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (xstar_equation(mid, d) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double gamma_d(uint32_t d, double tol) {
  if (d == 0) throw std::invalid_argument("gamma_d: requires d >= 1");
  if (d == 1) return 1.0;  // psi decreases to its infimum at x -> 1
  return psi(psi_argmin(d, tol), d);
}

double x_star(uint32_t d, double tol) { return std::exp(xstar_y(d, tol)); }

double c_d(uint32_t d, double tol) {
  double y = xstar_y(d, tol);
  double x = std::exp(y);
  // -y / (1-x)^d, with (1-x)^d via log1p for tiny x
  return -y * std::exp(-static_cast<double>(d) * std::log1p(-x));
}

double log10_gap_c_d(uint32_t d, double tol) {
  double y = xstar_y(d, tol);
  double x = std::exp(y);
  // d+1 - c_d = (d+1) (1 - (1-x)^{1-d}/(1+dx)); the inner ratio is exp(g)
  // with g ~ -x, so expm1 avoids the cancellation
  double g = (1.0 - static_cast<double>(d)) * std::log1p(-x) -
             std::log1p(static_cast<double>(d) * x);
  double gap = (d + 1) * (-std::expm1(g));
  if (gap > 0.0) return std::log10(gap);
  // x underflowed; to this accuracy the gap is (d+1) e^y
  return (std::log(static_cast<double>(d + 1)) + y) / std::log(10.0);
}

double poisson_tail(uint32_t k, double lambda) {
  if (lambda < 0.0) throw std::domain_error("poisson_tail: lambda < 0");
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  double term = std::exp(-lambda), cdf = 0.0;
  for (uint32_t j = 0; j < k; ++j) {
    cdf += term;
    term *= lambda / (j + 1);
  }
  return 1.0 - cdf;
}

double t_fixed_point(double c, uint32_t d, double tol) {
  if (c <= 0.0) throw std::domain_error("t_fixed_point: c must be positive");
  double gamma = gamma_d(d, tol);
  if (c <= gamma) return 1.0;
  // roots in (0,1) solve psi(t) = c; psi decreases on (0, argmin), so the
  // smallest root is bracketed by (0, argmin)
  double xmin = psi_argmin(d, tol);
  double lo = 1e-300, hi = xmin;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (psi(mid, d) > c ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  // polish by a few fixed-point steps (contraction near the smallest root)
  for (int i = 0; i < 4; ++i)
    t = std::exp(-c * std::pow(1.0 - t, static_cast<double>(d)));
  return t;
}

std::vector<double> t_sequence(double c, uint32_t d, uint32_t k) {
  std::vector<double> out;
  out.reserve(k + 1);
  double t = 0.0;  // t_{-1}
  for (uint32_t j = 0; j <= k; ++j) {
    t = std::exp(-c * std::pow(1.0 - t, static_cast<double>(d)));
    out.push_back(t);
  }
  return out;
}

std::vector<double> fixed_point_roots(double c, uint32_t d, double tol) {
  auto q = [c, d](double t) {
    return t - std::exp(-c * std::pow(1.0 - t, static_cast<double>(d)));
  };
  std::vector<double> roots;
  const int grid = 10000;
  double prev_t = 1e-12, prev_q = q(prev_t);
  for (int i = 1; i <= grid; ++i) {
    double t = static_cast<double>(i) / grid;
    if (i == grid) t = 1.0 - 1e-12;
    double qt = q(t);
    if ((prev_q < 0.0 && qt >= 0.0) || (prev_q > 0.0 && qt <= 0.0)) {
      double lo = prev_t, hi = t;
      while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (q(mid) * (prev_q < 0 ? 1.0 : -1.0) < 0.0 ? lo : hi) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_t = t;
    prev_q = qt;
  }
  roots.push_back(1.0);  // t = 1 always satisfies the equation
  return roots;
}

ThresholdTable make_threshold_table(uint32_t d, double tol) {
  ThresholdTable t;
  t.d = d;
  t.tolerance = tol;
  t.gamma = gamma_d(d, tol);
  if (d >= 2) {
    t.xstar = x_star(d, tol);
    t.cd = c_d(d, tol);
    t.log10_gap = log10_gap_c_d(d, tol);
    if (!(t.gamma < t.cd))
      throw std::runtime_error("threshold table: gamma_d < c_d violated");
  } else {
    t.xstar = 1.0;
    t.cd = 1.0;  // collapsibility and acyclicity coincide for graphs
    t.log10_gap = std::log10(2.0 - t.cd);
  }
  return t;
}

RegimeDensities regime_densities(double c, uint32_t d, double tol) {
  if (c <= 0.0) throw std::domain_error("regime_densities: c must be > 0");
  RegimeDensities r;
  r.c = c;
  r.d = d;
  double gamma = gamma_d(d, tol);
  double cd = d >= 2 ? c_d(d, tol) : 1.0;
  const double flag_band = 1e-9;
  r.boundary_point =
      std::fabs(c - gamma) <= flag_band || std::fabs(c - cd) <= flag_band;
  double t = t_fixed_point(c, d, tol);
  r.t = t;
  double om = 1.0 - t;
  double omd = std::pow(om, static_cast<double>(d));
  r.core_dminus1_density = poisson_tail(2, c * omd);
  r.core_d_density = c * omd * om / (d + 1);
  double g = r.core_d_density - om + c * t * omd;
  r.betti_density = g > 0.0 ? g : 0.0;
  r.shadow_density = omd * om;
  // c(1-t)^{d+1} / (1-t - c t (1-t)^d) with the common (1-t) cancelled, so
  // the collapsible regime (t=1) lands on 0 instead of 0/0
  double dfac = 1.0 - c * t * std::pow(om, static_cast<double>(d) - 1.0);
  r.avg_core_degree = dfac > 0.0 ? c * omd / dfac : 0.0;
  return r;
}

double ex_xT_bound(double c, uint32_t d, double tol) {
  if (c <= 0.0) throw std::domain_error("ex_xT_bound: c must be > 0");
  auto value = [c, d](double t) {
    double om = 1.0 - t;
    return t + c * t * std::pow(om, static_cast<double>(d)) -
           c / (d + 1) * (1.0 - std::pow(om, static_cast<double>(d + 1)));
  };
  double best = -1e300;
  for (double t : fixed_point_roots(c, d, tol)) best = std::max(best, value(t));
  return best;
}

}  // namespace ydsim
