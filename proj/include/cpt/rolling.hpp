#pragma once
// Expanding-window regression monitoring: fit OLS on [start, end], run the
// configured change tests on the residuals, one output row per end index.

#include <string>
#include <vector>

#include "cpt/csvio.hpp"
#include "cpt/power.hpp"
#include "cpt/series.hpp"
#include "cpt/variance.hpp"

namespace cpt {

struct RollingConfig {
  std::string response;
  std::vector<std::string> regressors;  // an intercept column is always added
  int start = 1;     // 1-based data row, fixed window start
  int end_from = 0;  // 1-based inclusive end range
  int end_to = 0;
  std::vector<Statistic> statistics;
  TrimSpec trim;
  VarianceConfig vcfg = VarianceConfig::kernel_andrews();
  double alpha = 0.05;

  // start < end_from <= end_to <= nrows, columns present, smallest window
  // long enough for the trim and for T > d; throws DataError otherwise.
  void validate(const Csv& data) const;
};

struct RollingRow {
  std::string end_label;  // first CSV column at the end row, an opaque label
  int end_index = 0;
  int T = 0;
  std::vector<TestOutcome> tests;  // one per configured statistic, in order
  bool failed = false;   // row-level marker; the run continues past it
  std::string note;      // failure reason when failed
};

struct RollingResult {
  std::vector<RollingRow> rows;
  std::string to_csv(const RollingConfig& cfg) const;
};

// Windows are independent computations; a singular window design or a
// degenerate variance marks that row and moves on.
RollingResult rolling_run(const Csv& data, const RollingConfig& cfg);

}  // namespace cpt
