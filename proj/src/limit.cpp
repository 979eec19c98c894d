#include "cpt/limit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cpt/rng.hpp"
#include "detail.hpp"

namespace cpt {

using detail::fmt_msg;

namespace {

constexpr double kXMin = 0.05;  // CDF mass below this is < 1e-100

// Exact refinement of a walk segment from a to b over time width dt: the
// within-segment maximum of the connecting bridge has survival
//   P(M > m) = exp(-2 (m-a)(m-b) / dt)  for m >= max(a, b),
// so inverting at a uniform U gives
//   M = (a + b + sqrt((a-b)^2 - 2 dt log U)) / 2,
// and M exceeds the running maximum mx exactly when U < exp(-z) with
// z = 2 (mx-a)(mx-b) / dt. Since exp(-z) <= 1/(1+z), a segment with
// U >= 1/(1+z) can be discarded with plain arithmetic; the log/sqrt runs
// only on the rare remainder. The minimum is symmetric.
struct SupTracker {
  double mx = 0.0;  // running max of the grid values, then of refined maxima
  double mn = 0.0;
  double dt;

  explicit SupTracker(double dt_) : dt(dt_) {}

  void step(double a, double b, Rng& g) {
    if (b > mx) mx = b;
    if (b < mn) mn = b;
    const double u = g.uniform_pos();
    const double zx = 2.0 * (mx - a) * (mx - b) / dt;
    if (u * (1.0 + zx) < 1.0) {
      const double d = a - b;
      const double m = 0.5 * (a + b + std::sqrt(d * d - 2.0 * dt * std::log(u)));
      if (m > mx) mx = m;
    }
    const double v = g.uniform_pos();
    const double zn = 2.0 * (a - mn) * (b - mn) / dt;
    if (v * (1.0 + zn) < 1.0) {
      const double d = a - b;
      const double m = 0.5 * (a + b - std::sqrt(d * d - 2.0 * dt * std::log(v)));
      if (m < mn) mn = m;
    }
  }

  double sup_abs() const { return std::max(mx, -mn); }
};

double sup_abs_wiener_draw(Rng& g, long steps, bool refine) {
  const double dt = 1.0 / double(steps);
  const double sdt = std::sqrt(dt);
  double w = 0.0;
  if (!refine) {
    double mx = 0.0, mn = 0.0;
    for (long j = 0; j < steps; ++j) {
      w += sdt * g.normal();
      if (w > mx) mx = w;
      if (w < mn) mn = w;
    }
    return std::max(mx, -mn);
  }
  SupTracker tr(dt);
  for (long j = 0; j < steps; ++j) {
    const double a = w;
    w += sdt * g.normal();
    tr.step(a, w, g);
  }
  return tr.sup_abs();
}

double sup_abs_bridge_draw(Rng& g, long steps, bool refine,
                           std::vector<double>& path) {
  const double dt = 1.0 / double(steps);
  const double sdt = std::sqrt(dt);
  path.resize(std::size_t(steps) + 1);
  path[0] = 0.0;
  double w = 0.0;
  for (long j = 1; j <= steps; ++j) {
    w += sdt * g.normal();
    path[std::size_t(j)] = w;
  }
  const double wT = path[std::size_t(steps)];
  // bridge grid values b_j = w_j - (j/n) w_n share the walk's local
  // fluctuation law, so the same segment refinement applies
  if (!refine) {
    double mx = 0.0;
    for (long j = 0; j <= steps; ++j) {
      const double b = path[std::size_t(j)] - (double(j) / steps) * wT;
      mx = std::max(mx, std::fabs(b));
    }
    return mx;
  }
  SupTracker tr(dt);
  double prev = 0.0;
  for (long j = 1; j <= steps; ++j) {
    const double b = path[std::size_t(j)] - (double(j) / steps) * wT;
    tr.step(prev, b, g);
    prev = b;
  }
  return tr.sup_abs();
}

}  // namespace

void LimitLaw::validate() const {
  if (K < 5) throw DataError(fmt_msg("limit-law series truncation K=%d < 5", K));
  if (!(tol > 0.0 && tol <= 1e-6))
    throw DataError(fmt_msg("limit-law tolerance %g outside (0, 1e-6]", tol));
}

LimitLaw LimitLaw::max_two(int K, double tol) {
  return LimitLaw{Kind::max_two_sup_wiener, K, tol};
}
LimitLaw LimitLaw::bridge(int K, double tol) {
  return LimitLaw{Kind::sup_brownian_bridge, K, tol};
}
LimitLaw LimitLaw::gumbel(double tol) {
  return LimitLaw{Kind::gumbel_de, 100, tol};
}

double cdf_sup_abs_wiener(double x, int K) {
  if (x <= kXMin) return 0.0;
  const double pi = std::numbers::pi;
  double s = 0.0;
  for (int k = 0; k < K; ++k) {
    const double odd = 2.0 * k + 1.0;
    const double term =
        std::exp(-pi * pi * odd * odd / (8.0 * x * x)) / odd;
    s += (k % 2 == 0) ? term : -term;
  }
  return std::clamp(4.0 / pi * s, 0.0, 1.0);
}

double cdf_max_two_sup_wiener(double x, int K) {
  const double c = cdf_sup_abs_wiener(x, K);
  return c * c;
}

double cdf_sup_brownian_bridge(double x, int K) {
  if (x <= kXMin) return 0.0;
  double s = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double term = std::exp(-2.0 * double(k) * double(k) * x * x);
    s += (k % 2 == 1) ? term : -term;
  }
  return std::clamp(1.0 - 2.0 * s, 0.0, 1.0);
}

double cdf_gumbel_de(double x) { return std::exp(-2.0 * std::exp(-x)); }

double cdf(const LimitLaw& law, double x) {
  law.validate();
  switch (law.kind) {
    case LimitLaw::Kind::max_two_sup_wiener:
      return cdf_max_two_sup_wiener(x, law.K);
    case LimitLaw::Kind::sup_brownian_bridge:
      return cdf_sup_brownian_bridge(x, law.K);
    case LimitLaw::Kind::gumbel_de:
      return cdf_gumbel_de(x);
  }
  return 0.0;
}

double quantile(const LimitLaw& law, double p) {
  law.validate();
  if (!(p > 0.0 && p < 1.0))
    throw DataError(fmt_msg("quantile probability %g outside (0, 1)", p));
  double lo = -1.0, hi = 1.0;
  while (cdf(law, lo) >= p) lo *= 2.0;    // only the gumbel law reaches left
  while (cdf(law, hi) < p) hi *= 2.0;
  while (hi - lo > law.tol) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(law, mid) >= p)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double p_value(const LimitLaw& law, double statistic) {
  return std::clamp(1.0 - cdf(law, statistic), 0.0, 1.0);
}

double mc_sup_abs_wiener(std::uint64_t seed, std::uint64_t stream, long steps,
                         bool refine) {
  Rng g(seed, stream);
  return sup_abs_wiener_draw(g, steps, refine);
}

RealSeries mc_sample_limit(const LimitLaw& law, long reps, long steps,
                           std::uint64_t seed, bool refine) {
  law.validate();
  if (reps < 1 || steps < 1)
    throw DataError(fmt_msg("sampler needs reps >= 1 and steps >= 1 "
                            "(got reps=%ld, steps=%ld)",
                            reps, steps));
  RealSeries out(static_cast<std::size_t>(reps));
  std::vector<double> path;
  for (long r = 0; r < reps; ++r) {
    Rng g(seed, std::uint64_t(r));
    switch (law.kind) {
      case LimitLaw::Kind::max_two_sup_wiener: {
        const double a = sup_abs_wiener_draw(g, steps, refine);
        const double b = sup_abs_wiener_draw(g, steps, refine);
        out[std::size_t(r)] = std::max(a, b);
        break;
      }
      case LimitLaw::Kind::sup_brownian_bridge:
        out[std::size_t(r)] = sup_abs_bridge_draw(g, steps, refine, path);
        break;
      case LimitLaw::Kind::gumbel_de:
        // exact inversion of exp(-2 e^{-x})
        out[std::size_t(r)] = -std::log(-std::log(g.uniform_pos()) / 2.0);
        break;
    }
  }
  return out;
}

double ks_distance(RealSeries sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw DataError("empty sample in ks_distance");
  std::sort(sample.begin(), sample.end());
  const double n = double(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, std::fabs(f - double(i + 1) / n));
    d = std::max(d, std::fabs(f - double(i) / n));
  }
  return d;
}

}  // namespace cpt
