#include "cpt/dgp.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "detail.hpp"

namespace cpt {

using detail::fmt_msg;

void DgpSpec::validate() const {
  if (T < 2) throw DataError(fmt_msg("dgp length T=%d < 2", T));
  if (burn_in < 0) throw DataError("burn-in must be >= 0");
  switch (errors) {
    case Errors::garch11:
      if (!(omega > 0.0) || alpha < 0.0 || beta < 0.0 || !(alpha + beta < 1.0))
        throw DataError(
            fmt_msg("garch11 needs omega>0, alpha,beta>=0, alpha+beta<1 "
                    "(got %g, %g, %g)",
                    omega, alpha, beta));
      break;
    case Errors::ar1:
      if (!(std::fabs(rho) < 1.0))
        throw DataError(fmt_msg("ar1 needs |rho|<1 (got %g)", rho));
      break;
    case Errors::arma22:
      // AR(2) stationarity triangle
      if (!(phi1 + phi2 < 1.0) || !(phi2 - phi1 < 1.0) ||
          !(std::fabs(phi2) < 1.0))
        throw DataError(
            fmt_msg("arma22 AR part (%g, %g) outside the stationarity "
                    "triangle",
                    phi1, phi2));
      break;
    default:
      break;
  }
  if (delta != 0.0) {
    const int ts = resolve_tstar();
    if (ts < 1 || ts >= T)
      throw DataError(fmt_msg("change point t*=%d outside [1, %d)", ts, T));
  }
}

int DgpSpec::resolve_tstar() const {
  switch (tstar_rule) {
    case TstarRule::fixed: return tstar_k;
    case TstarRule::quarter_root:
      return int(std::floor(std::pow(double(T), 0.25)));
    case TstarRule::frac5: return int(std::floor(0.05 * T));
  }
  return 0;
}

std::string DgpSpec::errors_name(Errors e) {
  switch (e) {
    case Errors::iid_normal: return "iid-normal";
    case Errors::rademacher: return "rademacher";
    case Errors::garch11: return "garch11";
    case Errors::ar1: return "ar1";
    case Errors::arma22: return "arma22";
  }
  return "?";
}

DgpSpec::Errors DgpSpec::parse_errors(const std::string& s) {
  if (s == "iid-normal") return Errors::iid_normal;
  if (s == "rademacher") return Errors::rademacher;
  if (s == "garch11") return Errors::garch11;
  if (s == "ar1") return Errors::ar1;
  if (s == "arma22") return Errors::arma22;
  throw DataError("unknown error model '" + s +
                  "' (expected iid-normal|rademacher|garch11|ar1|arma22)");
}

std::string DgpSpec::to_kv() const {
  std::ostringstream os;
  os << "errors=" << errors_name(errors) << "\n";
  switch (errors) {
    case Errors::garch11:
      os << "omega=" << omega << "\nalpha=" << alpha << "\nbeta=" << beta
         << "\n";
      break;
    case Errors::ar1:
      os << "rho=" << rho << "\n";
      break;
    case Errors::arma22:
      os << "phi1=" << phi1 << "\nphi2=" << phi2 << "\npsi1=" << psi1
         << "\npsi2=" << psi2 << "\n";
      break;
    default:
      break;
  }
  os << "mu=" << mu << "\ndelta=" << delta << "\n";
  switch (tstar_rule) {
    case TstarRule::fixed: os << "tstar=k=" << tstar_k << "\n"; break;
    case TstarRule::quarter_root: os << "tstar=quarter-root\n"; break;
    case TstarRule::frac5: os << "tstar=frac5\n"; break;
  }
  os << "T=" << T << "\nseed=" << seed << "\nburn-in=" << burn_in << "\n";
  return os.str();
}

namespace {

double parse_double_field(const std::map<std::string, std::string>& kv,
                          const std::string& key, double dflt) {
  auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0')
    throw DataError("field '" + key + "': bad number '" + it->second + "'");
  return v;
}

long parse_int_field(const std::map<std::string, std::string>& kv,
                     const std::string& key, long dflt) {
  auto it = kv.find(key);
  if (it == kv.end()) return dflt;
  char* end = nullptr;
  const long v = std::strtol(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0')
    throw DataError("field '" + key + "': bad integer '" + it->second + "'");
  return v;
}

}  // namespace

DgpSpec DgpSpec::from_kv(const std::map<std::string, std::string>& kv) {
  DgpSpec s;
  if (auto it = kv.find("errors"); it != kv.end())
    s.errors = parse_errors(it->second);
  s.omega = parse_double_field(kv, "omega", s.omega);
  s.alpha = parse_double_field(kv, "alpha", s.alpha);
  s.beta = parse_double_field(kv, "beta", s.beta);
  s.rho = parse_double_field(kv, "rho", s.rho);
  s.phi1 = parse_double_field(kv, "phi1", s.phi1);
  s.phi2 = parse_double_field(kv, "phi2", s.phi2);
  s.psi1 = parse_double_field(kv, "psi1", s.psi1);
  s.psi2 = parse_double_field(kv, "psi2", s.psi2);
  s.mu = parse_double_field(kv, "mu", s.mu);
  s.delta = parse_double_field(kv, "delta", s.delta);
  if (auto it = kv.find("tstar"); it != kv.end()) {
    const std::string& v = it->second;
    if (v == "quarter-root") {
      s.tstar_rule = TstarRule::quarter_root;
    } else if (v == "frac5") {
      s.tstar_rule = TstarRule::frac5;
    } else if (v.rfind("k=", 0) == 0) {
      s.tstar_rule = TstarRule::fixed;
      char* end = nullptr;
      s.tstar_k = int(std::strtol(v.c_str() + 2, &end, 10));
      if (end == v.c_str() + 2 || *end != '\0')
        throw DataError("field 'tstar': bad index '" + v + "'");
    } else {
      throw DataError("field 'tstar': expected k=N|quarter-root|frac5, got '" +
                      v + "'");
    }
  }
  s.T = int(parse_int_field(kv, "T", s.T));
  s.seed = std::uint64_t(parse_int_field(kv, "seed", 0));
  s.burn_in = int(parse_int_field(kv, "burn-in", s.burn_in));
  return s;
}

namespace {

bool is_recursive(DgpSpec::Errors e) {
  return e == DgpSpec::Errors::garch11 || e == DgpSpec::Errors::ar1 ||
         e == DgpSpec::Errors::arma22;
}

// shared recursion driver; draw(i) supplies innovation i
template <typename Draw>
RealSeries run_dgp(const DgpSpec& spec, Draw draw, RealSeries* sigma2_path) {
  const int burn = is_recursive(spec.errors) ? spec.burn_in : 0;
  const int total = spec.T + burn;
  RealSeries out(std::size_t(spec.T));
  if (sigma2_path) sigma2_path->assign(std::size_t(spec.T), 0.0);

  switch (spec.errors) {
    case DgpSpec::Errors::iid_normal:
      for (int i = 0; i < spec.T; ++i) out[std::size_t(i)] = draw(i);
      break;
    case DgpSpec::Errors::rademacher:
      // the forced-innovation hook maps w > 0 to +1 and w <= 0 to -1 so the
      // output alphabet stays {-1, +1}
      for (int i = 0; i < spec.T; ++i)
        out[std::size_t(i)] = draw(i) > 0.0 ? 1.0 : -1.0;
      break;
    case DgpSpec::Errors::ar1: {
      double e = 0.0;
      for (int i = 0; i < total; ++i) {
        e = spec.rho * e + draw(i);
        if (i >= burn) out[std::size_t(i - burn)] = e;
      }
      break;
    }
    case DgpSpec::Errors::arma22: {
      double e1 = 0.0, e2 = 0.0, w1 = 0.0, w2 = 0.0;
      for (int i = 0; i < total; ++i) {
        const double w = draw(i);
        const double e = spec.phi1 * e1 + spec.phi2 * e2 + w +
                         spec.psi1 * w1 + spec.psi2 * w2;
        e2 = e1;
        e1 = e;
        w2 = w1;
        w1 = w;
        if (i >= burn) out[std::size_t(i - burn)] = e;
      }
      break;
    }
    case DgpSpec::Errors::garch11: {
      // conditional variance starts at its stationary value
      double s2 = spec.omega / (1.0 - spec.alpha - spec.beta);
      double eprev = 0.0;
      for (int i = 0; i < total; ++i) {
        s2 = spec.omega + spec.alpha * eprev * eprev + spec.beta * s2;
        const double e = std::sqrt(s2) * draw(i);
        eprev = e;
        if (i >= burn) {
          out[std::size_t(i - burn)] = e;
          if (sigma2_path) (*sigma2_path)[std::size_t(i - burn)] = s2;
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace

RealSeries gen_errors_rng(const DgpSpec& spec, Rng& rng) {
  spec.validate();
  if (spec.errors == DgpSpec::Errors::rademacher)
    return run_dgp(
        spec, [&](int) { return rng.uniform() < 0.5 ? 1.0 : -1.0; }, nullptr);
  return run_dgp(spec, [&](int) { return rng.normal(); }, nullptr);
}

RealSeries gen_errors(const DgpSpec& spec) {
  Rng rng(spec.seed, 0);
  return gen_errors_rng(spec, rng);
}

RealSeries gen_errors_forced(const DgpSpec& spec, const RealSeries& w,
                             RealSeries* sigma2_path) {
  spec.validate();
  const int burn = is_recursive(spec.errors) ? spec.burn_in : 0;
  if (int(w.size()) < spec.T + burn)
    throw DataError(fmt_msg(
        "forced innovation series too short: need %d draws, got %zu",
        spec.T + burn, w.size()));
  return run_dgp(spec, [&](int i) { return w[std::size_t(i)]; }, sigma2_path);
}

RealSeries inject_change(const RealSeries& e, double mu, double delta,
                         int tstar) {
  const int T = int(e.size());
  if (tstar < 1 || tstar >= T)
    throw DataError(fmt_msg("change point t*=%d outside [1, %d)", tstar, T));
  RealSeries x(e.size());
  for (int t = 0; t < T; ++t)
    x[std::size_t(t)] = mu + e[std::size_t(t)] + (t + 1 > tstar ? delta : 0.0);
  return x;
}

double true_lrv(const DgpSpec& spec) {
  spec.validate();
  switch (spec.errors) {
    case DgpSpec::Errors::iid_normal:
    case DgpSpec::Errors::rademacher:
      return 1.0;
    case DgpSpec::Errors::ar1: {
      const double d = 1.0 - spec.rho;
      return 1.0 / (d * d);
    }
    case DgpSpec::Errors::arma22: {
      const double r =
          (1.0 + spec.psi1 + spec.psi2) / (1.0 - spec.phi1 - spec.phi2);
      return r * r;
    }
    case DgpSpec::Errors::garch11:
      // increments are uncorrelated, so the long-run variance is the
      // stationary variance
      return spec.omega / (1.0 - spec.alpha - spec.beta);
  }
  return 1.0;
}

}  // namespace cpt
