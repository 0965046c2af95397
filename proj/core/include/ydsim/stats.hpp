#pragma once

#include <cstdint>
#include <vector>

namespace ydsim {

// Compensated accumulation of trial statistics; summation order independent
// aggregation relies on callers feeding values in a fixed (trial-index)
// order.
class RunningStat {
 public:
  void add(double x);
  uint64_t count() const { return n_; }
  double mean() const;
  double variance() const;  // sample variance (n-1 denominator)
  double stderr_mean() const;

 private:
  uint64_t n_ = 0;
  double sum_ = 0, comp_ = 0;        // Kahan sum of x
  double sumsq_ = 0, compsq_ = 0;    // Kahan sum of x^2
};

// regularized incomplete gamma functions P(a,x), Q(a,x) = 1 - P(a,x)
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// survival function of the chi-square distribution with df degrees
double chi2_sf(double x, double df);

struct Chi2Result {
  double statistic = 0;
  double df = 0;
  double p_value = 1;
  uint32_t bins_used = 0;
};

// Goodness-of-fit of observed counts against expected cell probabilities.
// cell_probs must sum to 1 (the last cell is typically an overflow tail and
// observed's last entry must include all overflow observations). Cells with
// expected count < min_expected are pooled with a neighbor.
Chi2Result chi2_goodness_of_fit(const std::vector<uint64_t>& observed,
                                const std::vector<double>& cell_probs,
                                double min_expected = 5.0);

// Poisson cell probabilities: entries 0..max_k-1 are exact point masses,
// entry max_k is the tail Pr[Poi(lambda) >= max_k]; sums to 1.
std::vector<double> poisson_cell_probs(double lambda, uint32_t max_k);

}  // namespace ydsim
