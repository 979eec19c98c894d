#pragma once
// Change-robust variance estimators. Both estimators demean each side of a
// candidate change point t separately, so a mean shift at t does not inflate
// the estimate: the split estimator for uncorrelated errors, and the kernel
// long-run-variance estimator for serially correlated errors.

#include <functional>
#include <string>

#include "cpt/series.hpp"

namespace cpt {

struct VarianceConfig {
  enum class Kind { known, split, kernel };
  enum class Bandwidth { andrews_ar1, explicit_h };

  Kind kind = Kind::split;
  double sigma2 = 1.0;  // Kind::known, must be > 0
  Bandwidth bandwidth = Bandwidth::andrews_ar1;
  double h = 0.0;  // Bandwidth::explicit_h, must be > 0
  // empty kernel means the built-in Bartlett weight; a user kernel must
  // satisfy K(0)=1, K>=0, compact support
  std::function<double(double)> kernel;
  double floor_eps = 1e-12;

  void validate() const;  // throws DataError on a bad field
  std::string name() const;

  static VarianceConfig known(double sigma2_);
  static VarianceConfig split();
  static VarianceConfig kernel_andrews();
  static VarianceConfig kernel_fixed_h(double h_);

  // "known=1" | "split" | "kernel"; bandwidth "andrews" | "h=5"
  static VarianceConfig parse(const std::string& variance,
                              const std::string& kernel_name = "bartlett",
                              const std::string& bandwidth = "andrews");
};

// Both-sides-demeaned pooled variance at split point t (1 <= t <= T-1):
//   (1/T) ( sum_{s<=t} (X_s - mean_left)^2 + sum_{s>t} (X_s - mean_right)^2 ).
// Zero is a legal return; callers apply the degeneracy floor.
double split_variance(const RealSeries& x, int t);

// X_s minus its own side's mean: mean(x[1..t]) for s <= t, mean(x[t+1..T])
// after.
RealSeries demean_split(const RealSeries& x, int t);

// gamma_hat_l = (1/(T-l)) sum_{s=1}^{T-l} xd_s xd_{s+l}; requires 0 <= l < T.
double autocov(const RealSeries& xd, int lag);

// Bartlett weight max(0, 1-|u|).
double bartlett(double u);

// AR(1) plug-in bandwidth for the Bartlett kernel:
//   h = 1.1447 * (4 rho^2 T / ((1-rho)^2 (1+rho)^2))^(1/3), clamped to [1, T/2],
// with rho fitted by no-intercept lag-1 least squares. |rho| >= 0.999 is
// clamped to 0.999 and reported through *clamped.
double andrews_bandwidth(const RealSeries& x, bool* clamped = nullptr);

// sigma_hat^2_{T,t} = gamma_0 + 2 sum_{l>=1} K(l/h) gamma_l on the
// split-demeaned series, lags outside the kernel support skipped. The
// bandwidth rule is resolved on the demeaned series so a mean shift cannot
// drive rho toward 1. A negative estimate raises NonPsdLrvError (advice:
// raise h or switch kernels); magnitudes within round-off of zero clamp to 0.
double kernel_lrv(const RealSeries& x, int t, const VarianceConfig& cfg);

// Dispatch on cfg.kind: sigma2, split_variance, or kernel_lrv.
double sigma2_at(const RealSeries& x, int t, const VarianceConfig& cfg);

}  // namespace cpt
