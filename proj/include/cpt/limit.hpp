#pragma once
// Asymptotic null laws: CDFs, quantiles, p-values, and a Monte Carlo sampler
// used to cross-validate the series evaluations.
//
// Laws:
//  max_two_sup_wiener - max of two independent sup_{[0,1]}|W| variables
//                       (the trimmed mean-difference limit)
//  sup_brownian_bridge - sup_{[0,1]}|B| (the CUSUM limit, Kolmogorov law)
//  gumbel_de - exp(-2 e^{-x}) (the extreme-value CUSUM limit)

#include <cstdint>
#include <functional>

#include "cpt/series.hpp"

namespace cpt {

struct LimitLaw {
  enum class Kind { max_two_sup_wiener, sup_brownian_bridge, gumbel_de };

  Kind kind = Kind::max_two_sup_wiener;
  int K = 100;        // series truncation, >= 5
  double tol = 1e-9;  // quantile bisection tolerance, in (0, 1e-6]

  void validate() const;
  static LimitLaw max_two(int K = 100, double tol = 1e-9);
  static LimitLaw bridge(int K = 100, double tol = 1e-9);
  static LimitLaw gumbel(double tol = 1e-9);
};

// P(sup_{0<=u<=1} |W(u)| <= x)
//   = (4/pi) sum_{k>=0} ((-1)^k / (2k+1)) exp(-pi^2 (2k+1)^2 / (8 x^2)).
// Returns 0 for x <= 0.05: the true mass there is below 1e-100 and the
// series loses meaning. K terms; exponential decay makes K=100 overkill.
double cdf_sup_abs_wiener(double x, int K = 100);

// Square of the above (independence of the two sups).
double cdf_max_two_sup_wiener(double x, int K = 100);

// Kolmogorov law 1 - 2 sum_{k>=1} (-1)^(k+1) exp(-2 k^2 x^2), clamped to
// [0,1]; 0 for x <= 0.05.
double cdf_sup_brownian_bridge(double x, int K = 100);

// exp(-2 exp(-x)), strictly increasing on all of R.
double cdf_gumbel_de(double x);

double cdf(const LimitLaw& law, double x);

// Smallest x with CDF(x) >= p, bracketing bisection to law.tol.
double quantile(const LimitLaw& law, double p);

// 1 - CDF(statistic), clamped to [0,1].
double p_value(const LimitLaw& law, double statistic);

// reps independent draws from the law, deterministic given seed; draw r uses
// the (seed, r) substream, so replications can run in any order or in
// parallel with identical output.
//
// Walk-based laws simulate a steps-step scaled random walk. With
// refine=true (default) each step interval's extremum is additionally drawn
// from its exact conditional law given the interval endpoints, which removes
// the O(steps^(-1/2)) grid bias of the naive path sup; refine=false keeps
// the plain grid maximum. The gumbel_de law is sampled by closed-form
// inversion (a walk approximation converges at loglog rate, far too slowly
// to be useful as an oracle); steps is ignored there.
RealSeries mc_sample_limit(const LimitLaw& law, long reps, long steps,
                           std::uint64_t seed, bool refine = true);

// One sup_{[0,1]}|W| draw from an explicit substream; building block of the
// sampler, exposed for tests.
double mc_sup_abs_wiener(std::uint64_t seed, std::uint64_t stream, long steps,
                         bool refine = true);

// Kolmogorov distance between a sample and a reference CDF.
double ks_distance(RealSeries sample, const std::function<double(double)>& cdf);

}  // namespace cpt
