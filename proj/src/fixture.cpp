#include "cpt/fixture.hpp"

#include "cpt/csvio.hpp"
#include "cpt/rng.hpp"

namespace cpt {

Csv make_factor_fixture(std::uint64_t seed, const FixtureSpec& spec) {
  const double beta[5] = {1.0, 0.5, -0.3, 0.2, -0.4};
  Rng rng(seed);
  Csv csv;
  csv.header = {"date", "x", "f1", "f2", "f3", "f4", "f5"};
  csv.rows.reserve(std::size_t(spec.T));
  for (int t = 1; t <= spec.T; ++t) {
    double f[5];
    for (double& v : f) v = rng.normal();
    double x = 0.1 + spec.noise_sd * rng.normal();
    for (int j = 0; j < 5; ++j) x += beta[j] * f[j];
    if (t > spec.break_at) x += spec.break_size;
    std::vector<std::string> row;
    row.reserve(7);
    row.push_back(std::to_string(t));
    row.push_back(fmt_num(x));
    for (double v : f) row.push_back(fmt_num(v));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

}  // namespace cpt
