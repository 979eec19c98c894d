#pragma once
// Core value types shared by every module: the observation series, trimming
// rules, statistic outcomes, and the error taxonomy.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpt {

using RealSeries = std::vector<double>;

// Data or usage problems (bad input, malformed files, impossible configs).
// The CLI maps these to exit code 2; everything else is an internal error.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A variance estimate at or below the floor. Self-normalized statistics
// refuse to divide by it; a silent infinity would corrupt rejection tables.
struct DegenerateVarianceError : DataError {
  using DataError::DataError;
};

// A kernel long-run-variance estimate that came out negative.
struct NonPsdLrvError : DataError {
  using DataError::DataError;
};

void require_series(const RealSeries& x, std::size_t min_len = 2);

// Trimming rule for the trimmed statistics. The resolved trim t_T counts
// indices excluded at each end of the candidate-change range; all rules
// floor and must land in [1, T/2].
struct TrimSpec {
  enum class Rule { log_rule, quarter_root, square_root, fraction, explicit_k };

  Rule rule = Rule::log_rule;
  double theta = 0.0;  // fraction rule, requires 0 < theta < 1/2
  int k = 0;           // explicit rule

  // floor(log T), floor(T^(1/4)), floor(sqrt T), floor(theta*T), or k.
  // Throws DataError if the result is outside [1, floor(T/2)].
  int resolve(int T) const;

  // "log" | "quarter" | "sqrt" | "frac=0.1" | "k=5"
  static TrimSpec parse(const std::string& text);
  std::string name() const;

  static TrimSpec log_trim() { return TrimSpec{}; }
  static TrimSpec fixed(int k_) { return TrimSpec{Rule::explicit_k, 0.0, k_}; }
};

// Result of one statistic evaluation.
//  raw    - the statistic before any variance normalization
//  scaled - the value comparable to the limit law (see each function's note)
//  argmax - 1-based index t attaining the max, smallest on ties
//  trim   - resolved left trim actually used (0 when the statistic is untrimmed)
//  strim  - resolved right trim (equals trim unless asymmetric)
struct StatOutcome {
  double raw = 0.0;
  double scaled = 0.0;
  int argmax = 0;
  int trim = 0;
  int strim = 0;
};

// Result of a full hypothesis test: statistic plus limit-law p-value.
struct TestOutcome {
  std::string statistic;  // "renyi" | "cusum" | "de"
  double raw = 0.0;
  double scaled = 0.0;
  double p_value = 1.0;
  int argmax = 0;
  int trim = 0;
};

}  // namespace cpt
