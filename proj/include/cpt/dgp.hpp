#pragma once
// Seedable generators for the simulation error processes, the mean-change
// injection, and their analytic long-run variances.

#include <cstdint>
#include <map>
#include <string>

#include "cpt/rng.hpp"
#include "cpt/series.hpp"

namespace cpt {

struct DgpSpec {
  enum class Errors { iid_normal, rademacher, garch11, ar1, arma22 };
  enum class TstarRule { fixed, quarter_root, frac5 };  // k, T^(1/4), 0.05T

  Errors errors = Errors::iid_normal;

  // garch11: sigma_t^2 = omega + alpha e_{t-1}^2 + beta sigma_{t-1}^2,
  // e_t = sigma_t w_t; requires omega > 0, alpha, beta >= 0, alpha+beta < 1
  double omega = 0.5, alpha = 0.1, beta = 0.7;
  // ar1: e_t = rho e_{t-1} + w_t, |rho| < 1
  double rho = 0.5;
  // arma22: e_t = phi1 e_{t-1} + phi2 e_{t-2} + w_t + psi1 w_{t-1} + psi2 w_{t-2}
  double phi1 = 0.4, phi2 = -0.03, psi1 = 0.5, psi2 = -0.6;

  double mu = 0.0;
  double delta = 0.0;
  TstarRule tstar_rule = TstarRule::fixed;
  int tstar_k = 0;

  int T = 0;
  std::uint64_t seed = 0;
  // Recursive models (ar1, arma22, garch11) start from zero states (GARCH
  // variance starts at its stationary value) and discard this many warmup
  // draws; iid models ignore it.
  int burn_in = 500;

  void validate() const;
  int resolve_tstar() const;

  // Flat key-value text (one key=value per line), the manifest exchange form.
  std::string to_kv() const;
  static DgpSpec from_kv(const std::map<std::string, std::string>& kv);

  static std::string errors_name(Errors e);
  static Errors parse_errors(const std::string& s);
};

// Length-T error series from the (spec.seed, stream=0) substream.
RealSeries gen_errors(const DgpSpec& spec);

// Same, drawing innovations from a caller-supplied generator (power studies
// pass per-replication substreams).
RealSeries gen_errors_rng(const DgpSpec& spec, Rng& rng);

// Test hook: run the recursions with every innovation forced to the given
// values (burn-in included, so w must hold burn_in + T draws for recursive
// models). For garch11 the internal conditional-variance path of the kept
// window is written to *sigma2_path when non-null.
RealSeries gen_errors_forced(const DgpSpec& spec, const RealSeries& w,
                             RealSeries* sigma2_path = nullptr);

// X_t = mu + e_t + delta * [t > tstar]; requires 1 <= tstar < T.
RealSeries inject_change(const RealSeries& e, double mu, double delta,
                         int tstar);

// Analytic long-run variance of the error process (unit-variance
// innovations): 1 for the iid models, 1/(1-rho)^2 for ar1,
// ((1+psi1+psi2)/(1-phi1-phi2))^2 for arma22, and omega/(1-alpha-beta) for
// garch11, whose increments are uncorrelated.
double true_lrv(const DgpSpec& spec);

}  // namespace cpt
