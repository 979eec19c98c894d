#include "cpt/rolling.hpp"

#include <cmath>
#include <sstream>

#include "cpt/regression.hpp"
#include "detail.hpp"

namespace cpt {

void RollingConfig::validate(const Csv& data) const {
  if (response.empty()) throw DataError("rolling: response column not set");
  if (data.col_index(response) < 0)
    throw DataError("rolling: response column '" + response + "' not in data");
  for (const std::string& r : regressors)
    if (data.col_index(r) < 0)
      throw DataError("rolling: regressor column '" + r + "' not in data");
  const int n = int(data.rows.size());
  if (start < 1) throw DataError("rolling: start must be >= 1");
  if (!(start < end_from))
    throw DataError(detail::fmt_msg(
        "rolling: need start < end_from, got start=%d end_from=%d", start,
        end_from));
  if (!(end_from <= end_to))
    throw DataError(detail::fmt_msg(
        "rolling: need end_from <= end_to, got %d > %d", end_from, end_to));
  if (end_to > n)
    throw DataError(detail::fmt_msg(
        "rolling: end_to=%d exceeds the %d data rows", end_to, n));
  if (statistics.empty()) throw DataError("rolling: no statistics configured");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DataError("rolling: alpha must lie in (0,1)");
  vcfg.validate();
  const int t_min = end_from - start + 1;
  const int d = int(regressors.size()) + 1;
  if (t_min <= d)
    throw DataError(detail::fmt_msg(
        "rolling: smallest window has %d rows but the design has %d columns",
        t_min, d));
  trim.resolve(t_min);  // throws if the trim is infeasible at the window
}

RollingResult rolling_run(const Csv& data, const RollingConfig& cfg) {
  cfg.validate(data);
  const RealSeries y_all = data.numeric_column(cfg.response);
  std::vector<RealSeries> z_all;
  z_all.reserve(cfg.regressors.size());
  for (const std::string& r : cfg.regressors)
    z_all.push_back(data.numeric_column(r));
  const int d = int(cfg.regressors.size()) + 1;

  RollingResult out;
  for (int end = cfg.end_from; end <= cfg.end_to; ++end) {
    RollingRow row;
    row.end_index = end;
    row.end_label = data.rows[std::size_t(end - 1)].empty()
                        ? std::string()
                        : data.rows[std::size_t(end - 1)][0];
    row.T = end - cfg.start + 1;

    DesignMatrix Z = DesignMatrix::zeros(row.T, d);
    RealSeries X(std::size_t(row.T));
    for (int t = 0; t < row.T; ++t) {
      const std::size_t src = std::size_t(cfg.start - 1 + t);
      Z.at(t, 0) = 1.0;
      for (int c = 1; c < d; ++c) Z.at(t, c) = z_all[std::size_t(c - 1)][src];
      X[std::size_t(t)] = y_all[src];
    }

    try {
      const RealSeries resid = ols_residuals(Z, X);
      for (Statistic s : cfg.statistics)
        row.tests.push_back(run_change_test(resid, s, cfg.trim, cfg.vcfg));
    } catch (const DataError& e) {
      row.failed = true;
      row.note = e.what();
      row.tests.clear();
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string RollingResult::to_csv(const RollingConfig& cfg) const {
  std::ostringstream os;
  os << "end_label,end_index,T";
  for (Statistic s : cfg.statistics) {
    const std::string n = statistic_name(s);
    os << ',' << n << "_scaled," << n << "_p," << n << "_mlog10p," << n
       << "_argmax";
  }
  os << ",note\n";
  for (const RollingRow& row : rows) {
    os << csv_escape(row.end_label) << ',' << row.end_index << ',' << row.T;
    if (row.failed) {
      for (std::size_t i = 0; i < cfg.statistics.size(); ++i) os << ",,,,";
    } else {
      for (const TestOutcome& t : row.tests) {
        // p = 0 prints as mlog10p on a 1e-300 display floor
        const double p = std::max(t.p_value, 1e-300);
        os << ',' << fmt_num(t.scaled) << ',' << fmt_num(t.p_value) << ','
           << fmt_num(-std::log10(p)) << ',' << t.argmax;
      }
    }
    os << ',' << csv_escape(row.note) << '\n';
  }
  return os.str();
}

}  // namespace cpt
