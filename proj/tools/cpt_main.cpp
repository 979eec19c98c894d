// Command-line front end: one-shot tests on CSV columns, simulator output,
// size/power tables with optional charts, and expanding-window monitoring.
// Exit codes: 0 success, 1 internal error, 2 data or usage error.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cpt/csvio.hpp"
#include "cpt/dgp.hpp"
#include "cpt/limit.hpp"
#include "cpt/power.hpp"
#include "cpt/rolling.hpp"
#include "cpt/svg.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cpt::DataError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw cpt::DataError("write failed for '" + path + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  std::vector<std::string> kept;
  for (std::string& s : out)
    if (!s.empty()) kept.push_back(std::move(s));
  return kept;
}

// "k=N" | "quarter-root" | "frac5"
void parse_tstar(const std::string& v, cpt::DgpSpec::TstarRule* rule, int* k) {
  if (v == "quarter-root") {
    *rule = cpt::DgpSpec::TstarRule::quarter_root;
  } else if (v == "frac5") {
    *rule = cpt::DgpSpec::TstarRule::frac5;
  } else if (v.rfind("k=", 0) == 0) {
    char* end = nullptr;
    const long n = std::strtol(v.c_str() + 2, &end, 10);
    if (end == v.c_str() + 2 || *end != '\0')
      throw cpt::DataError("tstar: bad index '" + v + "'");
    *rule = cpt::DgpSpec::TstarRule::fixed;
    *k = int(n);
  } else {
    throw cpt::DataError("tstar: expected k=N|quarter-root|frac5, got '" + v +
                         "'");
  }
}

double parse_num(const std::string& field, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw cpt::DataError(field + ": bad number '" + text + "'");
  return v;
}

long parse_int(const std::string& field, const std::string& text) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0')
    throw cpt::DataError(field + ": bad integer '" + text + "'");
  return v;
}

struct TestArgs {
  std::string input, column, statistic = "renyi", trim = "log";
  std::string variance = "known=1", kernel = "bartlett", bandwidth = "andrews";
  std::string format = "json", output;
  double alpha = 0.05;
};

int cmd_test(const TestArgs& a) {
  const cpt::Csv csv = cpt::read_csv_file(a.input);
  const cpt::RealSeries x = csv.numeric_column(a.column);
  const cpt::Statistic stat = cpt::parse_statistic(a.statistic);
  const cpt::TrimSpec trim = cpt::TrimSpec::parse(a.trim);
  const cpt::VarianceConfig vcfg =
      cpt::VarianceConfig::parse(a.variance, a.kernel, a.bandwidth);
  if (!(a.alpha > 0.0 && a.alpha < 1.0))
    throw cpt::DataError("alpha must lie in (0,1)");

  if (stat == cpt::Statistic::renyi) {
    const int T = int(x.size());
    const int t_T = trim.resolve(T);
    // below 4 t_T the trimmed range is too short for the limit law to mean
    // anything; refuse rather than print a misleading p-value
    if (T < 4 * t_T)
      throw cpt::DataError("series too short: T=" + std::to_string(T) +
                           " but the trim needs T >= " +
                           std::to_string(4 * t_T));
  }

  const cpt::TestOutcome out = cpt::run_change_test(x, stat, trim, vcfg);
  const std::string decision =
      out.p_value <= a.alpha ? "reject" : "fail to reject";

  if (a.format == "json") {
    nlohmann::ordered_json j;
    j["statistic"] = out.statistic;
    j["raw"] = out.raw;
    j["scaled"] = out.scaled;
    j["p_value"] = out.p_value;
    j["argmax"] = out.argmax;
    j["trim"] = out.trim;
    j["alpha"] = a.alpha;
    j["decision"] = decision;
    write_text(a.output, j.dump(2) + "\n");
  } else if (a.format == "csv") {
    std::string s = "statistic,raw,scaled,p_value,argmax,trim,alpha,decision\n";
    s += out.statistic + ',' + cpt::fmt_num(out.raw) + ',' +
         cpt::fmt_num(out.scaled) + ',' + cpt::fmt_num(out.p_value) + ',' +
         std::to_string(out.argmax) + ',' + std::to_string(out.trim) + ',' +
         cpt::fmt_num(a.alpha) + ',' + decision + '\n';
    write_text(a.output, s);
  } else {
    throw cpt::DataError("format: expected json|csv, got '" + a.format + "'");
  }
  return 0;
}

struct SimArgs {
  std::string errors = "iid-normal", tstar = "k=0", output;
  cpt::DgpSpec spec;
};

int cmd_simulate(SimArgs& a) {
  a.spec.errors = cpt::DgpSpec::parse_errors(a.errors);
  parse_tstar(a.tstar, &a.spec.tstar_rule, &a.spec.tstar_k);
  const cpt::RealSeries e = cpt::gen_errors(a.spec);
  const cpt::RealSeries x =
      a.spec.delta == 0.0
          ? cpt::inject_change(e, a.spec.mu, 0.0, 1)
          : cpt::inject_change(e, a.spec.mu, a.spec.delta,
                               a.spec.resolve_tstar());
  std::string s = "t,x\n";
  for (std::size_t t = 0; t < x.size(); ++t)
    s += std::to_string(t + 1) + ',' + cpt::fmt_num(x[t]) + '\n';
  write_text(a.output, s);
  return 0;
}

struct PowerArgs {
  std::string manifest, output, svg;
  long seed = -1;  // < 0 means "use the manifest value"
  long reps = -1;
};

// density of the max-two-sup-Wiener law, for the size-mode chart overlay
double max_two_density(double x, int K = 100) {
  if (x <= 0.05) return 0.0;
  const double pi = 3.14159265358979323846;
  double f1 = 0.0;
  for (int k = 0; k < K; ++k) {
    const double m = 2.0 * k + 1.0;
    const double term =
        m * std::exp(-pi * pi * m * m / (8.0 * x * x)) * (k % 2 ? -1.0 : 1.0);
    f1 += term;
  }
  f1 *= pi / (x * x * x);
  return 2.0 * cpt::cdf_sup_abs_wiener(x, K) * f1;
}

int cmd_power(const PowerArgs& a) {
  std::map<std::string, std::string> kv;
  for (auto& [k, v] : cpt::read_kv_file(a.manifest)) kv[k] = v;

  auto need = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end())
      throw cpt::DataError(std::string("manifest: missing key '") + key + "'");
    return it->second;
  };
  auto get = [&](const char* key, const char* dflt) -> std::string {
    auto it = kv.find(key);
    return it == kv.end() ? std::string(dflt) : it->second;
  };

  cpt::ExperimentGrid grid;
  for (const std::string& s : split_list(need("statistics")))
    grid.statistics.push_back(cpt::parse_statistic(s));
  for (const std::string& s : split_list(need("deltas")))
    grid.deltas.push_back(parse_num("deltas", s));
  for (const std::string& s : split_list(need("T-list")))
    grid.T_list.push_back(int(parse_int("T-list", s)));
  grid.reps = int(parse_int("reps", get("reps", "2000")));
  grid.alpha = parse_num("level", get("level", "0.05"));
  grid.mu = parse_num("mu", get("mu", "0"));
  grid.trim = cpt::TrimSpec::parse(get("trim", "log"));
  grid.vcfg = cpt::VarianceConfig::parse(get("variance", "split"),
                                         get("kernel", "bartlett"),
                                         get("bandwidth", "andrews"));
  parse_tstar(get("tstar", "quarter-root"), &grid.tstar_rule, &grid.tstar_k);
  grid.seed = std::uint64_t(parse_int("seed", get("seed", "0")));
  if (a.seed >= 0) grid.seed = std::uint64_t(a.seed);
  if (a.reps >= 0) grid.reps = int(a.reps);

  const cpt::DgpSpec dgp = cpt::DgpSpec::from_kv(kv);

  bool size_mode = true;
  for (double d : grid.deltas)
    if (d != 0.0) size_mode = false;

  cpt::PowerTable table;
  std::map<std::string, cpt::RealSeries> samples;
  if (size_mode) {
    cpt::SizeResult sr = cpt::size_experiment(grid, dgp);
    table = std::move(sr.table);
    samples = std::move(sr.samples);
  } else {
    table = cpt::power_experiment(grid, dgp);
  }

  write_text(a.output, table.to_csv());
  for (const std::string& note : table.monotonicity_notes)
    std::cerr << "note: " << note << "\n";

  if (a.svg.empty()) return 0;

  cpt::SvgChart chart;
  chart.desc = "dgp=" + cpt::DgpSpec::errors_name(dgp.errors) +
               " reps=" + std::to_string(grid.reps) +
               " seed=" + std::to_string(grid.seed) +
               " trim=" + grid.trim.name() + " variance=" + grid.vcfg.name();
  if (size_mode) {
    chart.title = "null density of the scaled statistics";
    chart.xlabel = "scaled statistic";
    chart.ylabel = "density";
    bool has_renyi = false;
    for (auto& [key, sample] : samples) {
      cpt::SvgSeries s;
      s.name = key;
      auto [xs, ys] = cpt::kde_curve(sample);
      s.x = std::move(xs);
      s.y = std::move(ys);
      if (key.rfind("renyi:", 0) == 0) has_renyi = true;
      chart.series.push_back(std::move(s));
    }
    if (has_renyi) {
      // analytic overlay for the trimmed mean-difference limit
      double hi = 4.0;
      for (auto& [key, sample] : samples)
        if (key.rfind("renyi:", 0) == 0)
          for (double v : sample) hi = std::max(hi, v);
      cpt::SvgSeries lim;
      lim.name = "max-two limit";
      for (int i = 0; i <= 200; ++i) {
        const double x = 0.05 + (hi - 0.05) * i / 200.0;
        lim.x.push_back(x);
        lim.y.push_back(max_two_density(x));
      }
      chart.series.push_back(std::move(lim));
    }
  } else {
    chart.title = "rejection rate against the change size";
    chart.xlabel = "delta";
    chart.ylabel = "rejection rate";
    for (cpt::Statistic st : grid.statistics) {
      for (int T : grid.T_list) {
        cpt::SvgSeries s;
        s.name = cpt::statistic_name(st) + " T=" + std::to_string(T);
        std::vector<std::pair<double, double>> pts;
        for (const cpt::PowerCell& c : table.cells)
          if (c.stat == st && c.T == T) pts.emplace_back(c.delta, c.rate);
        std::sort(pts.begin(), pts.end());
        for (auto& [d, r] : pts) {
          s.x.push_back(d);
          s.y.push_back(r);
        }
        chart.series.push_back(std::move(s));
      }
    }
  }
  cpt::write_svg_file(a.svg, chart);
  return 0;
}

struct RollArgs {
  std::string input, response, regressors, statistics = "renyi,cusum,de";
  std::string trim = "log", variance = "kernel", kernel = "bartlett";
  std::string bandwidth = "andrews", output;
  int start = 1, end_from = 0, end_to = 0;
  double alpha = 0.05;
};

int cmd_rolling(const RollArgs& a) {
  const cpt::Csv csv = cpt::read_csv_file(a.input);
  cpt::RollingConfig cfg;
  cfg.response = a.response;
  cfg.regressors = split_list(a.regressors);
  cfg.start = a.start;
  cfg.end_from = a.end_from;
  cfg.end_to = a.end_to > 0 ? a.end_to : int(csv.rows.size());
  for (const std::string& s : split_list(a.statistics))
    cfg.statistics.push_back(cpt::parse_statistic(s));
  cfg.trim = cpt::TrimSpec::parse(a.trim);
  cfg.vcfg = cpt::VarianceConfig::parse(a.variance, a.kernel, a.bandwidth);
  cfg.alpha = a.alpha;
  const cpt::RollingResult res = cpt::rolling_run(csv, cfg);
  write_text(a.output, res.to_csv(cfg));
  int failed = 0;
  for (const cpt::RollingRow& r : res.rows)
    if (r.failed) ++failed;
  if (failed)
    std::cerr << "note: " << failed << " of " << res.rows.size()
              << " windows failed; see the note column\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"change-point tests, simulators, and monitoring"};
  app.require_subcommand(1);

  TestArgs ta;
  CLI::App* t = app.add_subcommand("test", "run one change test on a CSV column");
  t->add_option("-i,--input", ta.input, "input CSV path")->required();
  t->add_option("-c,--column", ta.column, "column to test")->required();
  t->add_option("-s,--statistic", ta.statistic, "renyi|cusum|de");
  t->add_option("--trim", ta.trim, "log|quarter|sqrt|frac=F|k=N");
  t->add_option("--variance", ta.variance, "known=S2|split|kernel");
  t->add_option("--kernel", ta.kernel, "kernel name (bartlett)");
  t->add_option("--bandwidth", ta.bandwidth, "andrews|h=H");
  t->add_option("--alpha", ta.alpha, "test level");
  t->add_option("--format", ta.format, "json|csv");
  t->add_option("-o,--output", ta.output, "output path (default stdout)");

  SimArgs sa;
  CLI::App* s = app.add_subcommand("simulate", "write a simulated series as CSV");
  s->add_option("--errors", sa.errors,
                "iid-normal|rademacher|garch11|ar1|arma22");
  s->add_option("-T,--length", sa.spec.T, "series length")->required();
  s->add_option("--seed", sa.spec.seed, "generator seed");
  s->add_option("--mu", sa.spec.mu, "baseline mean");
  s->add_option("--delta", sa.spec.delta, "mean shift after tstar");
  s->add_option("--tstar", sa.tstar, "k=N|quarter-root|frac5");
  s->add_option("--omega", sa.spec.omega, "garch11 intercept");
  s->add_option("--alpha", sa.spec.alpha, "garch11 arch weight");
  s->add_option("--beta", sa.spec.beta, "garch11 garch weight");
  s->add_option("--rho", sa.spec.rho, "ar1 coefficient");
  s->add_option("--phi1", sa.spec.phi1, "arma22 ar coefficient 1");
  s->add_option("--phi2", sa.spec.phi2, "arma22 ar coefficient 2");
  s->add_option("--psi1", sa.spec.psi1, "arma22 ma coefficient 1");
  s->add_option("--psi2", sa.spec.psi2, "arma22 ma coefficient 2");
  s->add_option("--burn-in", sa.spec.burn_in, "warmup draws for recursive models");
  s->add_option("-o,--output", sa.output, "output path (default stdout)");

  PowerArgs pa;
  CLI::App* p = app.add_subcommand("power", "size/power table from a manifest");
  p->add_option("-m,--manifest", pa.manifest, "key=value manifest path")
      ->required();
  p->add_option("-o,--output", pa.output, "table CSV path (default stdout)");
  p->add_option("--svg", pa.svg, "chart path (density for a {0} delta grid)");
  p->add_option("--seed", pa.seed, "override the manifest seed");
  p->add_option("--reps", pa.reps, "override the manifest replication count");

  RollArgs ra;
  CLI::App* r = app.add_subcommand("rolling",
                                   "expanding-window residual monitoring");
  r->add_option("-i,--input", ra.input, "input CSV path")->required();
  r->add_option("--response", ra.response, "response column")->required();
  r->add_option("--regressors", ra.regressors,
                "comma-separated regressor columns (intercept always added)");
  r->add_option("--start", ra.start, "fixed window start row (1-based)");
  r->add_option("--end-from", ra.end_from, "first window end row")->required();
  r->add_option("--end-to", ra.end_to, "last window end row (default: last)");
  r->add_option("--statistics", ra.statistics, "comma list of renyi|cusum|de");
  r->add_option("--trim", ra.trim, "log|quarter|sqrt|frac=F|k=N");
  r->add_option("--variance", ra.variance, "known=S2|split|kernel");
  r->add_option("--kernel", ra.kernel, "kernel name (bartlett)");
  r->add_option("--bandwidth", ra.bandwidth, "andrews|h=H");
  r->add_option("--alpha", ra.alpha, "test level");
  r->add_option("-o,--output", ra.output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (t->parsed()) return cmd_test(ta);
    if (s->parsed()) return cmd_simulate(sa);
    if (p->parsed()) return cmd_power(pa);
    if (r->parsed()) return cmd_rolling(ra);
  } catch (const cpt::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
