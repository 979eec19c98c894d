#include "cpt/variance.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"

namespace cpt {

using detail::fmt_msg;

void VarianceConfig::validate() const {
  if (kind == Kind::known && !(sigma2 > 0.0))
    throw DataError(fmt_msg("known variance %g must be > 0", sigma2));
  if (kind == Kind::kernel && bandwidth == Bandwidth::explicit_h && !(h > 0.0))
    throw DataError(fmt_msg("explicit bandwidth %g must be > 0", h));
  if (!(floor_eps > 0.0))
    throw DataError("variance floor must be > 0");
}

std::string VarianceConfig::name() const {
  switch (kind) {
    case Kind::known: return fmt_msg("known=%g", sigma2);
    case Kind::split: return "split";
    case Kind::kernel:
      return bandwidth == Bandwidth::andrews_ar1
                 ? "kernel(bartlett,andrews)"
                 : fmt_msg("kernel(bartlett,h=%g)", h);
  }
  return "?";
}

VarianceConfig VarianceConfig::known(double sigma2_) {
  VarianceConfig c;
  c.kind = Kind::known;
  c.sigma2 = sigma2_;
  c.validate();
  return c;
}

VarianceConfig VarianceConfig::split() {
  VarianceConfig c;
  c.kind = Kind::split;
  return c;
}

VarianceConfig VarianceConfig::kernel_andrews() {
  VarianceConfig c;
  c.kind = Kind::kernel;
  c.bandwidth = Bandwidth::andrews_ar1;
  return c;
}

VarianceConfig VarianceConfig::kernel_fixed_h(double h_) {
  VarianceConfig c;
  c.kind = Kind::kernel;
  c.bandwidth = Bandwidth::explicit_h;
  c.h = h_;
  c.validate();
  return c;
}

VarianceConfig VarianceConfig::parse(const std::string& variance,
                                     const std::string& kernel_name,
                                     const std::string& bandwidth) {
  VarianceConfig c;
  if (variance.rfind("known=", 0) == 0) {
    char* end = nullptr;
    const double s2 = std::strtod(variance.c_str() + 6, &end);
    if (end == variance.c_str() + 6 || *end != '\0')
      throw DataError("bad known variance in '" + variance + "'");
    return known(s2);
  }
  if (variance == "split") return split();
  if (variance != "kernel")
    throw DataError("unknown variance '" + variance +
                    "' (expected known=S2|split|kernel)");
  if (kernel_name != "bartlett")
    throw DataError("unknown kernel '" + kernel_name +
                    "' (only 'bartlett' is built in)");
  c.kind = Kind::kernel;
  if (bandwidth == "andrews") {
    c.bandwidth = Bandwidth::andrews_ar1;
  } else if (bandwidth.rfind("h=", 0) == 0) {
    char* end = nullptr;
    c.h = std::strtod(bandwidth.c_str() + 2, &end);
    if (end == bandwidth.c_str() + 2 || *end != '\0' || !(c.h > 0.0))
      throw DataError("bad bandwidth in '" + bandwidth + "'");
    c.bandwidth = Bandwidth::explicit_h;
  } else {
    throw DataError("unknown bandwidth '" + bandwidth +
                    "' (expected andrews|h=H)");
  }
  return c;
}

static void check_split_point(const RealSeries& x, int t) {
  require_series(x);
  const int T = int(x.size());
  if (t < 1 || t > T - 1)
    throw DataError(fmt_msg("split point t=%d outside [1, %d]", t, T - 1));
}

double split_variance(const RealSeries& x, int t) {
  check_split_point(x, t);
  const int T = int(x.size());
  double ml = 0.0, mr = 0.0;
  for (int s = 0; s < t; ++s) ml += x[std::size_t(s)];
  for (int s = t; s < T; ++s) mr += x[std::size_t(s)];
  ml /= t;
  mr /= (T - t);
  double acc = 0.0;
  for (int s = 0; s < t; ++s) {
    const double d = x[std::size_t(s)] - ml;
    acc += d * d;
  }
  for (int s = t; s < T; ++s) {
    const double d = x[std::size_t(s)] - mr;
    acc += d * d;
  }
  return acc / T;
}

RealSeries demean_split(const RealSeries& x, int t) {
  check_split_point(x, t);
  const int T = int(x.size());
  double ml = 0.0, mr = 0.0;
  for (int s = 0; s < t; ++s) ml += x[std::size_t(s)];
  for (int s = t; s < T; ++s) mr += x[std::size_t(s)];
  ml /= t;
  mr /= (T - t);
  RealSeries out(x.size());
  for (int s = 0; s < t; ++s) out[std::size_t(s)] = x[std::size_t(s)] - ml;
  for (int s = t; s < T; ++s) out[std::size_t(s)] = x[std::size_t(s)] - mr;
  return out;
}

double autocov(const RealSeries& xd, int lag) {
  const int T = int(xd.size());
  if (lag < 0 || lag >= T)
    throw DataError(fmt_msg("autocovariance lag %d outside [0, %d]", lag, T - 1));
  double acc = 0.0;
  for (int s = 0; s + lag < T; ++s)
    acc += xd[std::size_t(s)] * xd[std::size_t(s + lag)];
  return acc / (T - lag);
}

double bartlett(double u) {
  const double a = std::fabs(u);
  return a >= 1.0 ? 0.0 : 1.0 - a;
}

double andrews_bandwidth(const RealSeries& x, bool* clamped) {
  require_series(x, 4);
  const int T = int(x.size());
  if (clamped) *clamped = false;
  double num = 0.0, den = 0.0;
  for (int s = 0; s + 1 < T; ++s) {
    num += x[std::size_t(s)] * x[std::size_t(s + 1)];
    den += x[std::size_t(s)] * x[std::size_t(s)];
  }
  double rho = den > 0.0 ? num / den : 0.0;
  if (std::fabs(rho) >= 0.999) {
    rho = std::copysign(0.999, rho);
    if (clamped) *clamped = true;
  }
  const double om = (1.0 - rho) * (1.0 + rho);
  const double h =
      1.1447 * std::cbrt(4.0 * rho * rho * T / (om * om));
  return std::clamp(h, 1.0, T / 2.0);
}

double kernel_lrv(const RealSeries& x, int t, const VarianceConfig& cfg) {
  check_split_point(x, t);
  cfg.validate();
  const RealSeries xd = demean_split(x, t);
  const int T = int(xd.size());
  const double h = cfg.bandwidth == VarianceConfig::Bandwidth::explicit_h
                       ? cfg.h
                       : andrews_bandwidth(xd);
  const auto K = cfg.kernel ? cfg.kernel : bartlett;
  const double g0 = autocov(xd, 0);
  double s2 = g0;
  for (int lag = 1; lag < T; ++lag) {
    const double w = K(double(lag) / h);
    if (w == 0.0) {
      if (!cfg.kernel) break;  // Bartlett support ends; user kernels may resume
      continue;
    }
    s2 += 2.0 * w * autocov(xd, lag);
  }
  if (s2 < 0.0) {
    // round-off guard: an exactly-cancelling sum may land a hair below zero
    if (s2 >= -1e-10 * std::max(g0, 1e-300)) return 0.0;
    throw NonPsdLrvError(
        fmt_msg("non-PSD LRV: kernel estimate %.6g < 0 at t=%d (h=%.4g); "
                "raise the bandwidth or switch kernels",
                s2, t, h));
  }
  return s2;
}

double sigma2_at(const RealSeries& x, int t, const VarianceConfig& cfg) {
  cfg.validate();
  switch (cfg.kind) {
    case VarianceConfig::Kind::known: return cfg.sigma2;
    case VarianceConfig::Kind::split: return split_variance(x, t);
    case VarianceConfig::Kind::kernel: return kernel_lrv(x, t, cfg);
  }
  return 0.0;
}

}  // namespace cpt
