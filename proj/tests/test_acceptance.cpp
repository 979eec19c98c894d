// Acceptance gate: ten numbered criteria, one printed line each, evaluated
// at the pinned tolerances with pre-committed seeds (base 12345, criterion
// c draws from substream family 12345 + 1000*c). Lines report the measured
// quantities next to their required bands so a FAIL is directly readable.
// Runtime caps are part of the pass conditions where one is pinned. The
// exit code is the number of failed criteria.
//
// Run with no arguments for the full gate, or pass criterion numbers to run
// a subset, e.g. `acceptance 2 7`.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "cpt/dgp.hpp"
#include "cpt/fixture.hpp"
#include "cpt/limit.hpp"
#include "cpt/power.hpp"
#include "cpt/regression.hpp"
#include "cpt/rolling.hpp"
#include "cpt/stats.hpp"
#include "cpt/variance.hpp"
#include "oracles.hpp"

using namespace cpt;

namespace {

constexpr std::uint64_t kBaseSeed = 12345;

std::uint64_t seed_for(int criterion) {
  return kBaseSeed + 1000ull * std::uint64_t(criterion);
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

int g_run = 0, g_failed = 0;

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

void report(int n, bool pass, const std::string& detail, double secs) {
  ++g_run;
  if (!pass) ++g_failed;
  std::printf("[%d] %s %s [%.1f s]\n", n, pass ? "PASS" : "FAIL",
              detail.c_str(), secs);
  std::fflush(stdout);
}

// |a - b| within 1e-12 relative; the max(1, .) floor keeps the comparison
// meaningful for statistics that legitimately cross zero
bool close12(double a, double b) {
  return std::fabs(a - b) <=
         1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

double ks_vs_max_two(const RealSeries& s) {
  return ks_distance(s, [](double x) { return cdf_max_two_sup_wiener(x); });
}

// 1. Every statistic against its naive quadratic recomputation.
void criterion1() {
  Timer tm;
  const std::uint64_t seed = seed_for(1);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng g(seed, std::uint64_t(i));
    const int T = 4 + int(g.next_u64() % 9);
    RealSeries x(static_cast<std::size_t>(T));
    for (double& v : x) v = g.normal();
    const int t_T = 1 + int(g.next_u64() % std::uint64_t(T / 2));
    const int s_T = 1 + int(g.next_u64() % std::uint64_t(T - t_T));

    int arg = 0;
    {
      const StatOutcome o = cusum_stat(x);
      const double ref = oracle::cusum(x, &arg);
      if (!close12(o.raw, ref) || o.argmax != arg) ++bad;
    }
    for (const double tau : {0.0, 0.25}) {
      const StatOutcome o = weighted_cusum_stat(x, tau);
      const double ref = oracle::weighted_cusum(x, tau, &arg);
      if (!close12(o.raw, ref) || o.argmax != arg) ++bad;
    }
    {
      const StatOutcome o = trimmed_std_cusum_k(x, 1);
      const double ref = oracle::trimmed_std_cusum(x, 1, &arg);
      if (!close12(o.raw, ref) || o.argmax != arg) ++bad;
    }
    {
      const StatOutcome o = renyi_stat(x, TrimSpec::fixed(t_T));
      const double ref = oracle::renyi_raw(x, t_T, t_T, &arg);
      if (!close12(o.raw, ref) || o.argmax != arg) ++bad;
    }
    {
      const StatOutcome o = renyi_stat_asym(x, t_T, s_T);
      const double ref = oracle::renyi_raw(x, t_T, s_T, &arg);
      if (!close12(o.raw, ref) || o.argmax != arg) ++bad;
    }
    if (T >= 9) {
      const StatOutcome o = darling_erdos_stat(x);
      if (!close12(o.raw, oracle::darling_erdos(x))) ++bad;
    }
  }
  const double secs = tm.elapsed();
  report(1, bad == 0 && secs < 10.0,
         strf("statistics vs naive recomputation, 1000 series T in [4,12]: "
              "%d mismatches at 1e-12 relative [limit 10 s]",
              bad),
         secs);
}

// 2. Series CDFs against the refined Monte Carlo sampler.
void criterion2() {
  Timer tm;
  const std::uint64_t seed = seed_for(2);
  const long reps = 100000, steps = 10000;
  const double ks_mt =
      ks_vs_max_two(mc_sample_limit(LimitLaw::max_two(), reps, steps, seed));
  const double ks_br =
      ks_distance(mc_sample_limit(LimitLaw::bridge(), reps, steps, seed + 1),
                  [](double x) { return cdf_sup_brownian_bridge(x); });
  const double secs = tm.elapsed();
  report(2, ks_mt <= 0.01 && ks_br <= 0.01 && secs < 180.0,
         strf("limit-law series vs Monte Carlo (1e5 reps, 1e4 steps): "
              "KS max-two %.4f, bridge %.4f, tol 0.01 [limit 180 s]",
              ks_mt, ks_br),
         secs);
}

SizeResult iid_size_run(int criterion, const VarianceConfig& vcfg) {
  ExperimentGrid grid;
  grid.statistics = {Statistic::renyi};
  grid.deltas = {0.0};
  grid.T_list = {250};
  grid.reps = 10000;
  grid.trim = TrimSpec::log_trim();
  grid.vcfg = vcfg;
  grid.seed = seed_for(criterion);
  DgpSpec dgp;
  return size_experiment(grid, dgp);
}

// 3. Size and null shape under a known unit variance.
void criterion3() {
  Timer tm;
  const SizeResult res = iid_size_run(3, VarianceConfig::known(1.0));
  const double rate = res.table.cells.at(0).rate;
  const double ks = ks_vs_max_two(res.samples.at("renyi:250"));
  const double secs = tm.elapsed();
  report(3,
         rate >= 0.035 && rate <= 0.065 && ks <= 0.06 && secs < 120.0,
         strf("known-sigma size, T=250, trim floor(log T)=5, 1e4 reps: "
              "rejection %.4f vs [0.035, 0.065], null KS %.4f vs 0.06 "
              "[limit 120 s]",
              rate, ks),
         secs);
}

// 4. Size of the self-normalized variant, split variance.
void criterion4() {
  Timer tm;
  const SizeResult res = iid_size_run(4, VarianceConfig::split());
  const double rate = res.table.cells.at(0).rate;
  const double secs = tm.elapsed();
  report(4, rate >= 0.03 && rate <= 0.075 && secs < 180.0,
         strf("self-normalized size (split variance), T=250, 1e4 reps: "
              "rejection %.4f vs [0.03, 0.075] [limit 180 s]",
              rate),
         secs);
}

double grid_rate(const PowerTable& t, Statistic s, int T) {
  for (const PowerCell& c : t.cells)
    if (c.stat == s && c.T == T) return c.rate;
  std::fprintf(stderr, "missing power cell\n");
  std::exit(99);
}

// 5. Power ordering for a change near the start of the sample.
void criterion5() {
  Timer tm;
  ExperimentGrid grid;
  grid.statistics = {Statistic::renyi, Statistic::cusum, Statistic::de};
  grid.deltas = {2.0};
  grid.tstar_rule = DgpSpec::TstarRule::fixed;
  grid.tstar_k = 4;
  grid.T_list = {500};
  grid.reps = 2000;
  grid.trim = TrimSpec::parse("quarter");
  grid.vcfg = VarianceConfig::kernel_andrews();
  grid.seed = seed_for(5);
  DgpSpec dgp;
  const PowerTable tbl = power_experiment(grid, dgp);
  const double r = grid_rate(tbl, Statistic::renyi, 500);
  const double c = grid_rate(tbl, Statistic::cusum, 500);
  const double d = grid_rate(tbl, Statistic::de, 500);
  const double secs = tm.elapsed();
  report(5, r >= c + 0.05 && r >= d && secs < 300.0,
         strf("power at T=500, tstar=4, delta=2, kernel variance, 2000 reps: "
              "renyi %.3f, cusum %.3f, darling-erdos %.3f (need renyi >= "
              "cusum + 0.05 and >= de) [limit 300 s]",
              r, c, d),
         secs);
}

// 6. Rejection rate still grows with T for a tstar = T^(1/4) change.
void criterion6() {
  Timer tm;
  ExperimentGrid grid;
  grid.statistics = {Statistic::renyi};
  grid.deltas = {2.0};
  grid.tstar_rule = DgpSpec::TstarRule::quarter_root;
  grid.T_list = {200, 500};
  grid.reps = 2000;
  grid.trim = TrimSpec::parse("quarter");
  grid.vcfg = VarianceConfig::kernel_andrews();
  grid.seed = seed_for(6);
  DgpSpec dgp;
  const PowerTable tbl = power_experiment(grid, dgp);
  const double r200 = grid_rate(tbl, Statistic::renyi, 200);
  const double r500 = grid_rate(tbl, Statistic::renyi, 500);
  const double secs = tm.elapsed();
  report(6, r500 >= r200 - 0.02,
         strf("sample-size monotonicity (delta=2, tstar=T^(1/4), 2000 reps): "
              "renyi %.3f at T=200, %.3f at T=500, need T=500 >= T=200 - "
              "0.02",
              r200, r500),
         secs);
}

// 7. Centered and scaled statistic under a near-end alternative.
void criterion7() {
  Timer tm;
  const double ks = local_power_check(100000, 1000, 0.5, 10, 5000, seed_for(7));
  const double secs = tm.elapsed();
  report(7, ks <= 0.05 && secs < 300.0,
         strf("local power law, T=1e5, tstar=1000, delta=0.5, trim 10, 5000 "
              "reps: KS %.4f vs one-sided sup-Wiener, tol 0.05 [limit 300 s]",
              ks),
         secs);
}

// 8. Variance estimators near their targets at T=5000.
void criterion8() {
  Timer tm;
  const std::uint64_t seed = seed_for(8);
  DgpSpec iid;
  iid.T = 5000;
  Rng g0(seed, 0);
  const double sv = split_variance(gen_errors_rng(iid, g0), 2500);

  DgpSpec ar;
  ar.errors = DgpSpec::Errors::ar1;
  ar.rho = 0.5;
  ar.T = 5000;
  const VarianceConfig kc = VarianceConfig::kernel_andrews();
  int in15 = 0;
  for (int rep = 0; rep < 100; ++rep) {
    Rng g(seed, 1000 + std::uint64_t(rep));
    const double est = kernel_lrv(gen_errors_rng(ar, g), 2500, kc);
    if (std::fabs(est - 4.0) <= 0.6) ++in15;
  }
  const double secs = tm.elapsed();
  report(8, std::fabs(sv - 1.0) <= 0.05 && in15 >= 90,
         strf("variance consistency at T=5000: split at T/2 %.4f (need "
              "within 0.05 of 1), kernel on ar1(0.5) within 15%% of 4 in "
              "%d/100 reps (need >= 90)",
              sv, in15),
         secs);
}

// 9. Residual-based test: size on a stable regression, power on a late
// intercept break sized so sqrt(t_T) |mean regressor . delta beta| >= 8.
void criterion9() {
  Timer tm;
  const std::uint64_t seed = seed_for(9);
  const int T = 500, reps = 5000, tstar = 475;
  const double beta[3] = {1.0, 2.0, -1.0};
  const double shift = 3.3;
  const TrimSpec trim = TrimSpec::log_trim();
  const VarianceConfig vc = VarianceConfig::split();
  int rej_stable = 0, rej_break = 0;
  for (int rep = 0; rep < reps; ++rep) {
    Rng g(seed, std::uint64_t(rep));
    DesignMatrix Z = DesignMatrix::zeros(T, 3);
    RealSeries xs(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
      Z.at(t, 0) = 1.0;
      Z.at(t, 1) = g.normal();
      Z.at(t, 2) = g.normal();
    }
    for (int t = 0; t < T; ++t)
      xs[std::size_t(t)] = beta[0] * Z.at(t, 0) + beta[1] * Z.at(t, 1) +
                           beta[2] * Z.at(t, 2) + g.normal();
    if (residual_change_test(ols_residuals(Z, xs), trim, vc).p_value < 0.05)
      ++rej_stable;
    RealSeries xb = xs;
    for (int t = tstar; t < T; ++t) xb[std::size_t(t)] += shift;
    if (residual_change_test(ols_residuals(Z, xb), trim, vc).p_value < 0.05)
      ++rej_break;
  }
  const double size = double(rej_stable) / reps;
  const double power = double(rej_break) / reps;
  const double secs = tm.elapsed();
  report(9, size >= 0.035 && size <= 0.07 && power >= 0.80,
         strf("residual test on OLS d=3, T=500, 5000 reps: stable size %.4f "
              "vs [0.035, 0.07], intercept break +3.3 after t=475 detected "
              "%.3f (need >= 0.80)",
              size, power),
         secs);
}

int first_rejection(const RollingResult& res, std::size_t stat_idx,
                    double alpha) {
  for (const RollingRow& row : res.rows)
    if (!row.failed && row.tests[stat_idx].p_value < alpha)
      return row.end_index;
  return INT_MAX;
}

// 10. Expanding-window race: the trimmed mean-difference test should flag
// the late break at a strictly earlier window end than both competitors.
void criterion10() {
  Timer tm;
  const FixtureSpec spec;
  RollingConfig cfg;
  cfg.response = "x";
  cfg.regressors = {"f1", "f2", "f3", "f4", "f5"};
  cfg.start = 1;
  cfg.end_from = spec.break_at + 1;
  cfg.end_to = spec.T;
  cfg.statistics = {Statistic::renyi, Statistic::cusum, Statistic::de};
  cfg.trim = TrimSpec::log_trim();
  cfg.vcfg = VarianceConfig::kernel_andrews();
  int wins = 0;
  for (std::uint64_t s = 1; s <= 200; ++s) {
    const RollingResult res = rolling_run(make_factor_fixture(s, spec), cfg);
    const int r = first_rejection(res, 0, cfg.alpha);
    const int c = first_rejection(res, 1, cfg.alpha);
    const int d = first_rejection(res, 2, cfg.alpha);
    if (r < c && r < d) ++wins;
  }
  const double secs = tm.elapsed();
  report(10, wins >= 160,
         strf("expanding-window race on 200 seeded fixtures: renyi first "
              "rejection strictly earliest in %d/200 (need >= 160)",
              wins),
         secs);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const auto wanted = [&](int n) {
    return only.empty() ||
           std::find(only.begin(), only.end(), n) != only.end();
  };
  void (*const criteria[10])() = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  std::printf("acceptance gate, base seed %llu\n",
              static_cast<unsigned long long>(kBaseSeed));
  for (int n = 1; n <= 10; ++n) {
    if (!wanted(n)) continue;
    try {
      criteria[n - 1]();
    } catch (const std::exception& e) {
      report(n, false, strf("unexpected error: %s", e.what()), 0.0);
    }
  }
  std::printf("acceptance: %d of %d criteria passed\n", g_run - g_failed,
              g_run);
  return g_failed;
}
