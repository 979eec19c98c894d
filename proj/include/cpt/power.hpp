#pragma once
// Simulation harness: size and power tables over (statistic, T, delta)
// grids, plus the two distribution-shape diagnostics (null density distance
// and the near-end local power law).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cpt/dgp.hpp"
#include "cpt/series.hpp"
#include "cpt/variance.hpp"

namespace cpt {

enum class Statistic { renyi, cusum, de };
std::string statistic_name(Statistic s);
Statistic parse_statistic(const std::string& s);

// One test run: statistic, variance normalization, limit-law p-value.
//  renyi - self-normalized per-t when vcfg is split/kernel, known-sigma
//          scaling otherwise; max-two-sup-Wiener law
//  cusum - A_T divided by sigma_hat at its own argmax; bridge law
//  de    - E_T with the inner CUSUM divided by sigma_hat at its own argmax;
//          gumbel law
TestOutcome run_change_test(const RealSeries& x, Statistic stat,
                            const TrimSpec& trim, const VarianceConfig& vcfg);

struct ExperimentGrid {
  std::vector<Statistic> statistics;
  std::vector<double> deltas;
  DgpSpec::TstarRule tstar_rule = DgpSpec::TstarRule::quarter_root;
  int tstar_k = 0;
  std::vector<int> T_list;
  int reps = 2000;
  double alpha = 0.05;
  double mu = 0.0;
  TrimSpec trim;
  VarianceConfig vcfg;
  std::uint64_t seed = 0;

  void validate() const;
};

struct PowerCell {
  Statistic stat;
  std::string dgp;
  int T = 0;
  double delta = 0.0;
  double rate = 0.0;
  int reps = 0;
};

struct PowerTable {
  std::vector<PowerCell> cells;
  // per (statistic, T): count of adjacent delta pairs, walking outward from
  // 0 on each sign, whose rejection rate drops by more than 4 binomial
  // standard errors
  std::vector<std::string> monotonicity_notes;

  std::string to_csv() const;
};

// Rejection rates under the grid. Replication r of sample size index ti
// draws from the (grid.seed, ti*reps + r) substream and the same error
// series is reused across deltas and statistics, so the delta = 0 column of
// a power grid equals the size table cell exactly.
PowerTable power_experiment(const ExperimentGrid& grid, const DgpSpec& dgp);

struct SizeResult {
  PowerTable table;
  // scaled-statistic sample per (statistic, T), for density estimation;
  // key "stat:T"
  std::map<std::string, RealSeries> samples;
};

// power_experiment restricted to deltas = {0}, keeping the statistic samples.
SizeResult size_experiment(const ExperimentGrid& grid, const DgpSpec& dgp);

// Null-shape check: sample sqrt(t_T) D_T / sigma with sigma = sqrt of the
// DGP's analytic long-run variance, and its Kolmogorov distance to the
// max-two-sup-Wiener law.
struct DensityCheck {
  RealSeries sample;
  double ks = 1.0;
};
DensityCheck density_check(const DgpSpec& dgp, int T, const TrimSpec& trim,
                           int reps, std::uint64_t seed);

// Near-end alternative: iid normal errors, change delta at tstar, statistic
// sqrt(t_T) (D_T - |delta|); returns the Kolmogorov distance to the
// one-sided sup-Wiener law 2 Phi(x) - 1.
double local_power_check(int T, int tstar, double delta, int t_T, int reps,
                         std::uint64_t seed);

// CDF of sup_{0<=u<=1} W(u): 2 Phi(x) - 1 for x >= 0, else 0.
double cdf_sup_wiener_one_sided(double x);

}  // namespace cpt
