#include "ydsim/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace ydsim {

namespace {
inline void kahan_add(double& sum, double& comp, double x) {
  double y = x - comp;
  double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}
}  // namespace

void RunningStat::add(double x) {
  ++n_;
  kahan_add(sum_, comp_, x);
  kahan_add(sumsq_, compsq_, x * x);
}

double RunningStat::mean() const { return n_ ? sum_ / n_ : 0.0; }

double RunningStat::variance() const {
  if (n_ < 2) return 0.0;
  double m = mean();
  double v = (sumsq_ - n_ * m * m) / (n_ - 1);
  return v > 0.0 ? v : 0.0;
}

double RunningStat::stderr_mean() const {
  return n_ ? std::sqrt(variance() / n_) : 0.0;
}

// series expansion of P(a,x), valid for x < a+1
static double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// continued fraction for Q(a,x), valid for x >= a+1 (modified Lentz)
static double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi2_sf(double x, double df) { return gamma_q(0.5 * df, 0.5 * x); }

Chi2Result chi2_goodness_of_fit(const std::vector<uint64_t>& observed,
                                const std::vector<double>& cell_probs,
                                double min_expected) {
  if (observed.size() != cell_probs.size())
    throw std::invalid_argument("chi2: size mismatch");
  uint64_t total = 0;
  for (uint64_t o : observed) total += o;
  if (total == 0) throw std::invalid_argument("chi2: no observations");
  double mass = 0.0;
  for (double p : cell_probs) mass += p;
  if (std::fabs(mass - 1.0) > 1e-6)
    throw std::invalid_argument("chi2: cell probabilities must sum to 1");

  std::vector<double> exp_counts, obs_counts;
  for (size_t i = 0; i < cell_probs.size(); ++i) {
    exp_counts.push_back(cell_probs[i] * total);
    obs_counts.push_back(static_cast<double>(observed[i]));
  }

  // pool cells with small expectation into the previous kept cell
  std::vector<double> e, o;
  for (size_t i = 0; i < exp_counts.size(); ++i) {
    if (!e.empty() && (exp_counts[i] < min_expected || e.back() < min_expected)) {
      e.back() += exp_counts[i];
      o.back() += obs_counts[i];
    } else {
      e.push_back(exp_counts[i]);
      o.push_back(obs_counts[i]);
    }
  }
  // a trailing underfull cell merges backwards
  while (e.size() > 1 && e.back() < min_expected) {
    e[e.size() - 2] += e.back();
    o[o.size() - 2] += o.back();
    e.pop_back();
    o.pop_back();
  }

  Chi2Result r;
  r.bins_used = static_cast<uint32_t>(e.size());
  for (size_t i = 0; i < e.size(); ++i) {
    double diff = o[i] - e[i];
    if (e[i] > 0.0) r.statistic += diff * diff / e[i];
  }
  r.df = static_cast<double>(e.size() >= 2 ? e.size() - 1 : 1);
  r.p_value = chi2_sf(r.statistic, r.df);
  return r;
}

std::vector<double> poisson_cell_probs(double lambda, uint32_t max_k) {
  // cells 0..max_k-1 exact, last cell = Pr[Poi >= max_k]
  std::vector<double> p(max_k + 1);
  double term = std::exp(-lambda), cdf = 0.0;
  for (uint32_t k = 0; k < max_k; ++k) {
    p[k] = term;
    cdf += term;
    term *= lambda / (k + 1);
  }
  p[max_k] = 1.0 - cdf;
  return p;
}

}  // namespace ydsim
