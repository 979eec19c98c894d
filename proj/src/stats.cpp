#include "cpt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "cpt/variance.hpp"
#include "detail.hpp"

namespace cpt {

using detail::fmt_msg;
using detail::prefix_sums;

void require_series(const RealSeries& x, std::size_t min_len) {
  if (x.size() < min_len)
    throw DataError(fmt_msg("series too short: T=%zu, need T >= %zu", x.size(),
                            min_len));
  for (double v : x)
    if (!std::isfinite(v)) throw DataError("series contains a non-finite value");
}

int TrimSpec::resolve(int T) const {
  if (T < 2) throw DataError("trim rule needs T >= 2");
  int t = 0;
  switch (rule) {
    case Rule::log_rule:
      t = int(std::floor(std::log(double(T))));
      break;
    case Rule::quarter_root:
      t = int(std::floor(std::pow(double(T), 0.25)));
      break;
    case Rule::square_root:
      t = int(std::floor(std::sqrt(double(T))));
      break;
    case Rule::fraction:
      if (!(theta > 0.0 && theta < 0.5))
        throw DataError(fmt_msg("trim fraction %g outside (0, 1/2)", theta));
      t = int(std::floor(theta * T));
      break;
    case Rule::explicit_k:
      t = k;
      break;
  }
  if (t < 1 || t > T / 2)
    throw DataError(
        fmt_msg("trim rule %s resolves to t_T=%d outside [1, %d] at T=%d",
                name().c_str(), t, T / 2, T));
  return t;
}

TrimSpec TrimSpec::parse(const std::string& text) {
  TrimSpec ts;
  if (text == "log") {
    ts.rule = Rule::log_rule;
  } else if (text == "quarter") {
    ts.rule = Rule::quarter_root;
  } else if (text == "sqrt") {
    ts.rule = Rule::square_root;
  } else if (text.rfind("frac=", 0) == 0) {
    ts.rule = Rule::fraction;
    char* end = nullptr;
    ts.theta = std::strtod(text.c_str() + 5, &end);
    if (end == text.c_str() + 5 || *end != '\0')
      throw DataError("bad trim fraction in '" + text + "'");
  } else if (text.rfind("k=", 0) == 0) {
    ts.rule = Rule::explicit_k;
    char* end = nullptr;
    long v = std::strtol(text.c_str() + 2, &end, 10);
    if (end == text.c_str() + 2 || *end != '\0' || v < 1)
      throw DataError("bad trim count in '" + text + "'");
    ts.k = int(v);
  } else {
    throw DataError("unknown trim rule '" + text +
                    "' (expected log|quarter|sqrt|frac=F|k=N)");
  }
  return ts;
}

std::string TrimSpec::name() const {
  switch (rule) {
    case Rule::log_rule: return "log";
    case Rule::quarter_root: return "quarter";
    case Rule::square_root: return "sqrt";
    case Rule::fraction: return fmt_msg("frac=%g", theta);
    case Rule::explicit_k: return fmt_msg("k=%d", k);
  }
  return "?";
}

StatOutcome cusum_stat(const RealSeries& x) {
  require_series(x);
  const int T = int(x.size());
  const auto S = prefix_sums(x);
  const double rootT = std::sqrt(double(T));
  StatOutcome out;
  out.argmax = 1;
  for (int t = 1; t <= T; ++t) {
    const double v = std::fabs(S[t] - (double(t) / T) * S[T]) / rootT;
    if (v > out.raw) {
      out.raw = v;
      out.argmax = t;
    }
  }
  out.scaled = out.raw;
  return out;
}

StatOutcome weighted_cusum_stat(const RealSeries& x, double tau) {
  require_series(x);
  if (!(tau >= 0.0 && tau < 0.5))
    throw DataError(
        fmt_msg("weight exponent tau=%g outside [0, 1/2); the tau=1/2 "
                "boundary is served by trimmed_std_cusum and "
                "darling_erdos_stat",
                tau));
  const int T = int(x.size());
  const auto S = prefix_sums(x);
  const double rootT = std::sqrt(double(T));
  StatOutcome out;
  out.argmax = 1;
  for (int t = 1; t < T; ++t) {
    const double u = double(t) / T;
    const double v =
        std::pow(u * (1.0 - u), -tau) * std::fabs(S[t] - u * S[T]) / rootT;
    if (v > out.raw) {
      out.raw = v;
      out.argmax = t;
    }
  }
  out.scaled = out.raw;
  return out;
}

StatOutcome trimmed_std_cusum_k(const RealSeries& x, int t_T) {
  require_series(x);
  const int T = int(x.size());
  if (t_T < 1 || t_T > T - t_T)
    throw DataError(fmt_msg("empty trimming window: t_T=%d, T=%d", t_T, T));
  const auto S = prefix_sums(x);
  const double rootT = std::sqrt(double(T));
  StatOutcome out;
  out.trim = out.strim = t_T;
  out.argmax = t_T;
  for (int t = t_T; t <= T - t_T; ++t) {
    const double u = double(t) / T;
    const double v =
        std::fabs(S[t] - u * S[T]) / (std::sqrt(u * (1.0 - u)) * rootT);
    if (v > out.raw) {
      out.raw = v;
      out.argmax = t;
    }
  }
  out.scaled = out.raw;
  return out;
}

StatOutcome trimmed_std_cusum(const RealSeries& x, const TrimSpec& trim) {
  require_series(x);
  return trimmed_std_cusum_k(x, trim.resolve(int(x.size())));
}

StatOutcome renyi_stat_asym(const RealSeries& x, int t_T, int s_T) {
  require_series(x);
  const int T = int(x.size());
  if (t_T < 1 || s_T < 1 || t_T > T - s_T)
    throw DataError(
        fmt_msg("empty trimming window: t_T=%d, s_T=%d, T=%d", t_T, s_T, T));
  const auto S = prefix_sums(x);
  StatOutcome out;
  out.trim = t_T;
  out.strim = s_T;
  out.argmax = t_T;
  for (int t = t_T; t <= T - s_T; ++t) {
    const double v = std::fabs(S[t] / t - (S[T] - S[t]) / double(T - t));
    if (v > out.raw) {
      out.raw = v;
      out.argmax = t;
    }
  }
  out.scaled = std::sqrt(double(t_T)) * out.raw;
  return out;
}

StatOutcome renyi_stat(const RealSeries& x, const TrimSpec& trim) {
  require_series(x);
  const int t_T = trim.resolve(int(x.size()));
  return renyi_stat_asym(x, t_T, t_T);
}

double darling_erdos_scale(int T) {
  const double y = T / std::pow(std::log(double(T)), 1.5);
  if (!(y > std::numbers::e))
    throw DataError(
        fmt_msg("T=%d too small for the extreme-value normalizers (need "
                "T/(log T)^(3/2) > e, i.e. T >= 9)",
                T));
  return std::sqrt(2.0 * std::log(std::log(y)));
}

double darling_erdos_center(int T) {
  const double y = T / std::pow(std::log(double(T)), 1.5);
  if (!(y > std::numbers::e))
    throw DataError(
        fmt_msg("T=%d too small for the extreme-value normalizers (need "
                "T/(log T)^(3/2) > e, i.e. T >= 9)",
                T));
  const double ll = std::log(std::log(y));
  return 2.0 * ll - 0.5 * std::log(ll) + 0.5 * std::log(std::numbers::pi);
}

StatOutcome darling_erdos_stat(const RealSeries& x) {
  require_series(x);
  const int T = int(x.size());
  const double a = darling_erdos_scale(T);  // validates T
  const double m = darling_erdos_center(T);
  StatOutcome inner = trimmed_std_cusum_k(x, 1);
  StatOutcome out;
  out.raw = a * inner.raw - m;
  out.scaled = out.raw;
  out.argmax = inner.argmax;
  out.trim = out.strim = 1;
  return out;
}

StatOutcome renyi_self_normalized(const RealSeries& x, const TrimSpec& trim,
                                  const VarianceConfig& vcfg) {
  require_series(x);
  vcfg.validate();
  const int T = int(x.size());
  const int t_T = trim.resolve(T);
  const auto S = prefix_sums(x);

  // split variance via prefix sums of squares, O(1) per candidate t
  std::vector<double> Q;
  if (vcfg.kind == VarianceConfig::Kind::split) {
    Q.assign(x.size() + 1, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) Q[i + 1] = Q[i] + x[i] * x[i];
  }

  StatOutcome out;
  out.trim = out.strim = t_T;
  out.argmax = t_T;
  for (int t = t_T; t <= T - t_T; ++t) {
    double s2 = 0.0;
    switch (vcfg.kind) {
      case VarianceConfig::Kind::known:
        s2 = vcfg.sigma2;
        break;
      case VarianceConfig::Kind::split: {
        const double left = Q[t] - S[t] * S[t] / t;
        const double right =
            (Q[T] - Q[t]) - (S[T] - S[t]) * (S[T] - S[t]) / double(T - t);
        s2 = (left + right) / T;
        break;
      }
      case VarianceConfig::Kind::kernel:
        try {
          s2 = kernel_lrv(x, t, vcfg);
        } catch (const NonPsdLrvError& e) {
          throw NonPsdLrvError(fmt_msg("at candidate t=%d: %s", t, e.what()));
        }
        break;
    }
    if (!(s2 > vcfg.floor_eps))
      throw DegenerateVarianceError(
          fmt_msg("degenerate variance at candidate t=%d (sigma^2=%.3g <= "
                  "floor %.3g)",
                  t, s2, vcfg.floor_eps));
    const double v =
        std::fabs(S[t] / t - (S[T] - S[t]) / double(T - t)) / std::sqrt(s2);
    if (v > out.raw) {
      out.raw = v;
      out.argmax = t;
    }
  }
  out.raw *= std::sqrt(double(t_T));
  out.scaled = out.raw;
  return out;
}

}  // namespace cpt
