#include "cpt/power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cpt/csvio.hpp"
#include "cpt/limit.hpp"
#include "cpt/stats.hpp"
#include "detail.hpp"

namespace cpt {

using detail::fmt_msg;

std::string statistic_name(Statistic s) {
  switch (s) {
    case Statistic::renyi: return "renyi";
    case Statistic::cusum: return "cusum";
    case Statistic::de: return "de";
  }
  return "?";
}

Statistic parse_statistic(const std::string& s) {
  if (s == "renyi") return Statistic::renyi;
  if (s == "cusum") return Statistic::cusum;
  if (s == "de" || s == "darling-erdos") return Statistic::de;
  throw DataError("unknown statistic '" + s + "' (expected renyi|cusum|de)");
}

TestOutcome run_change_test(const RealSeries& x, Statistic stat,
                            const TrimSpec& trim, const VarianceConfig& vcfg) {
  vcfg.validate();
  const int T = int(x.size());
  TestOutcome out;
  out.statistic = statistic_name(stat);

  // competitors divide by sigma_hat at their own argmax; the argmax itself
  // is scale-free, so it is located first and the normalizer follows
  auto sigma_at = [&](int t) {
    const int tc = std::clamp(t, 1, T - 1);
    const double s2 = sigma2_at(x, tc, vcfg);
    if (!(s2 > vcfg.floor_eps))
      throw DegenerateVarianceError(
          fmt_msg("degenerate variance at t=%d (sigma^2=%.3g <= floor %.3g)",
                  tc, s2, vcfg.floor_eps));
    return std::sqrt(s2);
  };

  switch (stat) {
    case Statistic::renyi: {
      if (vcfg.kind == VarianceConfig::Kind::known) {
        const StatOutcome so = renyi_stat(x, trim);
        out.raw = so.raw;
        out.scaled = so.scaled / std::sqrt(vcfg.sigma2);
        out.argmax = so.argmax;
        out.trim = so.trim;
      } else {
        const StatOutcome so = renyi_self_normalized(x, trim, vcfg);
        out.raw = so.raw;
        out.scaled = so.scaled;
        out.argmax = so.argmax;
        out.trim = so.trim;
      }
      out.p_value = p_value(LimitLaw::max_two(), out.scaled);
      break;
    }
    case Statistic::cusum: {
      const StatOutcome so = cusum_stat(x);
      out.raw = so.raw;
      out.argmax = so.argmax;
      out.trim = 0;
      out.scaled = so.raw == 0.0 ? 0.0 : so.raw / sigma_at(so.argmax);
      out.p_value = p_value(LimitLaw::bridge(), out.scaled);
      break;
    }
    case Statistic::de: {
      const double a = darling_erdos_scale(T);
      const double m = darling_erdos_center(T);
      const StatOutcome inner = trimmed_std_cusum_k(x, 1);
      out.raw = a * inner.raw - m;
      out.argmax = inner.argmax;
      out.trim = 1;
      const double A =
          inner.raw == 0.0 ? 0.0 : inner.raw / sigma_at(inner.argmax);
      out.scaled = a * A - m;
      out.p_value = p_value(LimitLaw::gumbel(), out.scaled);
      break;
    }
  }
  return out;
}

void ExperimentGrid::validate() const {
  if (statistics.empty()) throw DataError("grid has no statistics");
  if (deltas.empty()) throw DataError("grid has no delta values");
  if (T_list.empty()) throw DataError("grid has no sample sizes");
  if (reps < 1) throw DataError("grid needs reps >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DataError(fmt_msg("grid alpha %g outside (0, 1)", alpha));
  vcfg.validate();
}

std::string PowerTable::to_csv() const {
  std::ostringstream os;
  os << "statistic,dgp,T,delta,rate,reps\n";
  for (const PowerCell& c : cells)
    os << statistic_name(c.stat) << ',' << c.dgp << ',' << c.T << ','
       << fmt_num(c.delta) << ',' << fmt_num(c.rate) << ',' << c.reps << '\n';
  return os.str();
}

namespace {

int resolve_tstar_for(const ExperimentGrid& grid, int T) {
  switch (grid.tstar_rule) {
    case DgpSpec::TstarRule::fixed: return grid.tstar_k;
    case DgpSpec::TstarRule::quarter_root:
      return int(std::floor(std::pow(double(T), 0.25)));
    case DgpSpec::TstarRule::frac5: return int(std::floor(0.05 * T));
  }
  return 0;
}

// full grid runner; when samples != nullptr the scaled statistic of every
// delta=0 replication is recorded per (statistic, T)
PowerTable run_grid(const ExperimentGrid& grid, const DgpSpec& dgp,
                    std::map<std::string, RealSeries>* samples) {
  grid.validate();
  const std::string dgp_name = DgpSpec::errors_name(dgp.errors);
  PowerTable table;

  // cells in deterministic order; rejection counters per (T, delta, stat)
  std::vector<std::vector<std::vector<int>>> hits(
      grid.T_list.size(),
      std::vector<std::vector<int>>(grid.deltas.size(),
                                    std::vector<int>(grid.statistics.size(), 0)));

  for (std::size_t ti = 0; ti < grid.T_list.size(); ++ti) {
    const int T = grid.T_list[ti];
    DgpSpec cell_dgp = dgp;
    cell_dgp.T = T;
    cell_dgp.mu = 0.0;
    cell_dgp.delta = 0.0;
    const int tstar = resolve_tstar_for(grid, T);
    for (const double delta : grid.deltas)
      if (delta != 0.0 && (tstar < 1 || tstar >= T))
        throw DataError(
            fmt_msg("change point t*=%d outside [1, %d)", tstar, T));

    for (int rep = 0; rep < grid.reps; ++rep) {
      // substream keyed by (T index, rep) only: the same error series is
      // reused across deltas and statistics, so the delta=0 power column
      // equals the size table exactly
      Rng rng(grid.seed, std::uint64_t(ti) * std::uint64_t(grid.reps) +
                             std::uint64_t(rep));
      const RealSeries e = gen_errors_rng(cell_dgp, rng);
      for (std::size_t di = 0; di < grid.deltas.size(); ++di) {
        const double delta = grid.deltas[di];
        const RealSeries x = delta == 0.0
                                 ? inject_change(e, grid.mu, 0.0, 1)
                                 : inject_change(e, grid.mu, delta, tstar);
        for (std::size_t si = 0; si < grid.statistics.size(); ++si) {
          const TestOutcome to =
              run_change_test(x, grid.statistics[si], grid.trim, grid.vcfg);
          if (to.p_value < grid.alpha) ++hits[ti][di][si];
          if (samples && delta == 0.0) {
            const std::string key =
                statistic_name(grid.statistics[si]) + ":" + std::to_string(T);
            (*samples)[key].push_back(to.scaled);
          }
        }
      }
    }

    for (std::size_t di = 0; di < grid.deltas.size(); ++di)
      for (std::size_t si = 0; si < grid.statistics.size(); ++si)
        table.cells.push_back(PowerCell{grid.statistics[si], dgp_name, T,
                                        grid.deltas[di],
                                        double(hits[ti][di][si]) / grid.reps,
                                        grid.reps});
  }

  // monotonicity diagnostics: walking outward from 0 on either sign, a
  // power curve should not drop by more than 4 binomial standard errors
  for (std::size_t si = 0; si < grid.statistics.size(); ++si) {
    for (std::size_t ti = 0; ti < grid.T_list.size(); ++ti) {
      std::vector<std::pair<double, double>> pts;  // (delta, rate)
      for (const PowerCell& c : table.cells)
        if (c.stat == grid.statistics[si] && c.T == grid.T_list[ti])
          pts.emplace_back(c.delta, c.rate);
      std::sort(pts.begin(), pts.end());
      int violations = 0;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto& [d0, r0] = pts[i];
        const auto& [d1, r1] = pts[i + 1];
        const double se =
            4.0 * std::sqrt(std::max(r0, r1) * (1.0 - std::max(r0, r1)) /
                            grid.reps) +
            1e-12;
        // moving right: rates should rise for deltas >= 0, fall for <= 0
        if (d0 >= 0.0 && r1 < r0 - se) ++violations;
        if (d1 <= 0.0 && r1 > r0 + se) ++violations;
      }
      table.monotonicity_notes.push_back(
          fmt_msg("%s T=%d: %d monotonicity violations beyond 4 binomial se",
                  statistic_name(grid.statistics[si]).c_str(),
                  grid.T_list[ti], violations));
    }
  }
  return table;
}

}  // namespace

PowerTable power_experiment(const ExperimentGrid& grid, const DgpSpec& dgp) {
  return run_grid(grid, dgp, nullptr);
}

SizeResult size_experiment(const ExperimentGrid& grid, const DgpSpec& dgp) {
  for (double d : grid.deltas)
    if (d != 0.0)
      throw DataError("size experiment requires a delta grid of exactly {0}");
  SizeResult res;
  res.table = run_grid(grid, dgp, &res.samples);
  return res;
}

DensityCheck density_check(const DgpSpec& dgp, int T, const TrimSpec& trim,
                           int reps, std::uint64_t seed) {
  if (reps < 1) throw DataError("density check needs reps >= 1");
  DgpSpec spec = dgp;
  spec.T = T;
  spec.delta = 0.0;
  spec.validate();
  const double sigma = std::sqrt(true_lrv(spec));
  DensityCheck out;
  out.sample.reserve(std::size_t(reps));
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(seed, std::uint64_t(rep));
    const RealSeries e = gen_errors_rng(spec, rng);
    const StatOutcome so = renyi_stat(e, trim);
    out.sample.push_back(so.scaled / sigma);
  }
  out.ks = ks_distance(out.sample,
                       [](double x) { return cdf_max_two_sup_wiener(x); });
  return out;
}

double cdf_sup_wiener_one_sided(double x) {
  return x <= 0.0 ? 0.0 : std::erf(x / std::numbers::sqrt2);
}

double local_power_check(int T, int tstar, double delta, int t_T, int reps,
                         std::uint64_t seed) {
  if (reps < 1) throw DataError("local power check needs reps >= 1");
  DgpSpec spec;
  spec.errors = DgpSpec::Errors::iid_normal;
  spec.T = T;
  RealSeries sample;
  sample.reserve(std::size_t(reps));
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(seed, std::uint64_t(rep));
    const RealSeries e = gen_errors_rng(spec, rng);
    const RealSeries x = inject_change(e, 0.0, delta, tstar);
    const StatOutcome so = renyi_stat_asym(x, t_T, t_T);
    sample.push_back(std::sqrt(double(t_T)) * (so.raw - std::fabs(delta)));
  }
  return ks_distance(sample, cdf_sup_wiener_one_sided);
}

}  // namespace cpt
