#pragma once
// Synthetic factor-model fixture with a late intercept break, shaped like a
// daily five-factor asset-pricing panel: columns date, x, f1..f5.

#include <cstdint>

#include "cpt/csvio.hpp"

namespace cpt {

struct FixtureSpec {
  int T = 260;               // rows (one trading year)
  int break_at = 250;        // last pre-break observation
  double break_size = 1.35;  // intercept shift after break_at
  double noise_sd = 1.0;
};

// Factors are iid standard normal; the response is
//   x = 0.1 + (1.0, 0.5, -0.3, 0.2, -0.4) . f + noise,
// with break_size added to the intercept after row break_at. The date
// column is the integer row index (an opaque ordered label).
Csv make_factor_fixture(std::uint64_t seed, const FixtureSpec& spec = {});

}  // namespace cpt
