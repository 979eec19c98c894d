#pragma once
// Model fitting that feeds the change-point machinery: OLS residuals, NLS
// residuals, and scalar GMM moment series, plus the residual-based change
// test itself.

#include <functional>
#include <vector>

#include "cpt/series.hpp"
#include "cpt/variance.hpp"

namespace cpt {

// Row-major design matrix, row t = x_t'.
struct DesignMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;  // rows*cols

  double& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
  double at(int r, int c) const { return data[std::size_t(r) * cols + c]; }
  static DesignMatrix zeros(int rows, int cols);
};

// Least squares through column-pivoted QR; never forms (Z'Z)^(-1).
// Requires T > d and a condition estimate |R_11/R_dd| below 1e10, otherwise
// DataError naming the estimate.
std::vector<double> ols_fit(const DesignMatrix& Z, const RealSeries& X);
RealSeries ols_residuals(const DesignMatrix& Z, const RealSeries& X);

// Nonlinear least squares over a compact box.
struct NlsProblem {
  // model value h(x_row, theta)
  std::function<double(const std::vector<double>&, const std::vector<double>&)>
      model;
  std::vector<double> lower;  // finite per-coordinate bounds
  std::vector<double> upper;
  DesignMatrix Z;
  RealSeries X;
};

// Minimizes the residual sum of squares by a box-clamped Nelder-Mead simplex
// search restarted from a 5^min(d,3)-point grid over the box (5 levels on
// the first three coordinates, midpoints beyond). The winner is the lowest
// objective; exact ties keep the earliest grid start. Throws DataError on a
// non-finite objective.
std::vector<double> nls_fit(const NlsProblem& p);
RealSeries nls_residuals(const NlsProblem& p, const std::vector<double>& theta);

// Scalar method-of-moments: solve sum_t g(x_t, theta) = 0 on [lower, upper].
struct GmmProblem {
  std::function<double(double, double)> moment;  // g(x, theta)
  double lower = 0.0;
  double upper = 0.0;
  RealSeries x;
};

// Left-to-right scan over 256 subintervals for the first sign change, then
// bisection to width 1e-10; returns the smallest bracketed root. No sign
// change on the interval raises DataError.
double gmm_fit(const GmmProblem& p);
RealSeries gmm_moment_series(const GmmProblem& p, double theta);

// Self-normalized trimmed mean-difference test on a residual or moment
// series, p-value from the max-two-sup-Wiener law.
TestOutcome residual_change_test(const RealSeries& residuals,
                                 const TrimSpec& trim,
                                 const VarianceConfig& vcfg);

}  // namespace cpt
