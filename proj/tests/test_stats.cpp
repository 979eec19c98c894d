#include <cmath>
#include <limits>

#include "cpt/rng.hpp"
#include "cpt/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cpt;

namespace {

RealSeries random_series(std::uint64_t seed, int T) {
  Rng g(seed);
  RealSeries x(static_cast<std::size_t>(T));
  for (double& v : x) v = g.normal();
  return x;
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("trim rules resolve with floors") {
  CHECK(TrimSpec::log_trim().resolve(100) == 4);       // floor(4.605)
  CHECK(TrimSpec::log_trim().resolve(250) == 5);       // floor(5.521)
  CHECK(TrimSpec::parse("sqrt").resolve(16) == 4);
  CHECK(TrimSpec::parse("sqrt").resolve(17) == 4);     // floor(4.123)
  CHECK(TrimSpec::parse("quarter").resolve(100) == 3); // floor(3.162)
  CHECK(TrimSpec::parse("quarter").resolve(500) == 4);
  CHECK(TrimSpec::parse("frac=0.1").resolve(47) == 4); // floor(4.7)
  CHECK(TrimSpec::parse("k=5").resolve(100) == 5);
  CHECK(TrimSpec::fixed(3).resolve(6) == 3);           // boundary T/2

  CHECK_THROWS_AS(TrimSpec::log_trim().resolve(2), DataError);   // floor(log 2)=0
  CHECK_THROWS_AS(TrimSpec::fixed(4).resolve(7), DataError);     // 4 > floor(7/2)
  CHECK_THROWS_AS(TrimSpec::parse("frac=0.6").resolve(100), DataError);
  CHECK_THROWS_AS(TrimSpec::parse("frac=0.001").resolve(100), DataError);
  CHECK_THROWS_AS(TrimSpec::parse("nonsense"), DataError);
  CHECK_THROWS_AS(TrimSpec::parse("k=0"), DataError);
  CHECK(TrimSpec::parse("frac=0.25").name() == "frac=0.25");
}

TEST_CASE("cusum on the two-step example") {
  const RealSeries x{0, 0, 1, 1};
  const StatOutcome o = cusum_stat(x);
  CHECK(o.raw == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(o.scaled == o.raw);
  CHECK(o.argmax == 2);
}

TEST_CASE("weighted cusum example and tau domain") {
  const RealSeries x{0, 0, 1, 1};
  const StatOutcome o = weighted_cusum_stat(x, 0.25);
  CHECK(o.raw == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(o.argmax == 2);
  // tau = 0 degenerates to the plain cusum over 1 <= t < T
  const StatOutcome z = weighted_cusum_stat(x, 0.0);
  CHECK(z.raw == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(weighted_cusum_stat(x, 0.5), DataError);
  CHECK_THROWS_AS(weighted_cusum_stat(x, 0.7), DataError);
  CHECK_THROWS_AS(weighted_cusum_stat(x, -0.1), DataError);
}

TEST_CASE("trimmed standardized cusum example") {
  const RealSeries x{0, 0, 1, 1};
  const StatOutcome o = trimmed_std_cusum_k(x, 1);
  CHECK(o.raw == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(o.argmax == 2);
  CHECK(o.trim == 1);
  CHECK_THROWS_AS(trimmed_std_cusum_k(x, 3), DataError);  // empty window
}

TEST_CASE("trimmed mean difference example") {
  const RealSeries x{0, 0, 1, 1};
  const StatOutcome o = renyi_stat(x, TrimSpec::fixed(1));
  CHECK(o.raw == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(o.scaled == doctest::Approx(1.0).epsilon(1e-12));  // sqrt(1) * 1
  CHECK(o.argmax == 2);

  const StatOutcome a = renyi_stat_asym(x, 1, 2);
  CHECK(a.raw == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.trim == 1);
  CHECK(a.strim == 2);
  CHECK_THROWS_AS(renyi_stat_asym(x, 3, 2), DataError);  // t_T > T - s_T
}

TEST_CASE("scaled value uses the square root of the trim") {
  // step of height 2 halfway through 16 points, sqrt trim -> t_T = 4
  RealSeries x(16, 0.0);
  for (int t = 8; t < 16; ++t) x[std::size_t(t)] = 2.0;
  const StatOutcome o = renyi_stat(x, TrimSpec::parse("sqrt"));
  CHECK(o.trim == 4);
  CHECK(o.raw == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(o.scaled == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(o.argmax == 8);
}

TEST_CASE("darling-erdos on a constant series is minus the centering") {
  const RealSeries x(100, 7.0);
  const StatOutcome o = darling_erdos_stat(x);
  // the inner CUSUM is rounding dust here, so argmax is not pinned down
  CHECK(o.raw == doctest::Approx(-2.338349).epsilon(1e-5));
  CHECK(o.scaled == o.raw);
  CHECK(darling_erdos_scale(100) == doctest::Approx(1.295493).epsilon(1e-5));
  CHECK(darling_erdos_center(100) == doctest::Approx(2.338349).epsilon(1e-5));
  CHECK(darling_erdos_center(1000) == doctest::Approx(3.185235).epsilon(1e-5));
}

TEST_CASE("darling-erdos domain gate") {
  CHECK_THROWS_AS(darling_erdos_stat(RealSeries(8, 0.0)), DataError);
  CHECK_NOTHROW(darling_erdos_stat(random_series(3, 9)));
  CHECK_THROWS_AS(darling_erdos_scale(8), DataError);
}

TEST_CASE("darling-erdos composes from its displayed pieces") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const RealSeries x = random_series(100 + s, 9 + int(s) * 7);
    const StatOutcome inner = trimmed_std_cusum_k(x, 1);
    const double expect = darling_erdos_scale(int(x.size())) * inner.raw -
                          darling_erdos_center(int(x.size()));
    const StatOutcome o = darling_erdos_stat(x);
    // absolute tolerance: the value crosses zero, relative bands degenerate
    CHECK(std::fabs(o.raw - expect) <= 1e-12);
    CHECK(o.argmax == inner.argmax);
  }
}

TEST_CASE("statistics match the naive recomputations") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const int T = 8 + int(s % 13) * 4;
    const RealSeries x = random_series(1000 + s, T);
    int arg = 0;

    const StatOutcome c = cusum_stat(x);
    CHECK(c.raw == doctest::Approx(oracle::cusum(x, &arg)).epsilon(1e-12));
    CHECK(c.argmax == arg);

    const StatOutcome w = weighted_cusum_stat(x, 0.25);
    CHECK(w.raw ==
          doctest::Approx(oracle::weighted_cusum(x, 0.25, &arg)).epsilon(1e-12));
    CHECK(w.argmax == arg);

    const StatOutcome tc = trimmed_std_cusum_k(x, 2);
    CHECK(tc.raw ==
          doctest::Approx(oracle::trimmed_std_cusum(x, 2, &arg)).epsilon(1e-12));
    CHECK(tc.argmax == arg);

    const StatOutcome r = renyi_stat_asym(x, 2, 2);
    CHECK(r.raw == doctest::Approx(oracle::renyi_raw(x, 2, 2, &arg)).epsilon(1e-12));
    CHECK(r.argmax == arg);

    const StatOutcome sn =
        renyi_self_normalized(x, TrimSpec::fixed(2), VarianceConfig::split());
    CHECK(sn.scaled ==
          doctest::Approx(oracle::renyi_self_norm_split(x, 2, &arg)).epsilon(1e-10));
    CHECK(sn.argmax == arg);

    if (T >= 9) {  // below the extreme-value domain gate
      const StatOutcome de = darling_erdos_stat(x);
      CHECK(std::fabs(de.raw - oracle::darling_erdos(x)) <= 1e-10);
    }
  }
}

TEST_CASE("location shift leaves every statistic unchanged") {
  const RealSeries x = random_series(42, 60);
  RealSeries y = x;
  for (double& v : y) v += 123.456;
  CHECK(cusum_stat(y).raw == doctest::Approx(cusum_stat(x).raw).epsilon(1e-9));
  CHECK(weighted_cusum_stat(y, 0.25).raw ==
        doctest::Approx(weighted_cusum_stat(x, 0.25).raw).epsilon(1e-9));
  CHECK(renyi_stat(y, TrimSpec::fixed(3)).raw ==
        doctest::Approx(renyi_stat(x, TrimSpec::fixed(3)).raw).epsilon(1e-9));
  CHECK(std::fabs(darling_erdos_stat(y).raw - darling_erdos_stat(x).raw) <=
        1e-7);
}

TEST_CASE("scaling multiplies raw values and keeps the argmax") {
  const RealSeries x = random_series(43, 48);
  RealSeries y = x;
  for (double& v : y) v *= -2.5;
  const StatOutcome rx = renyi_stat(x, TrimSpec::fixed(3));
  const StatOutcome ry = renyi_stat(y, TrimSpec::fixed(3));
  CHECK(ry.raw == doctest::Approx(2.5 * rx.raw).epsilon(1e-12));
  CHECK(ry.argmax == rx.argmax);
  const StatOutcome cx = cusum_stat(x);
  const StatOutcome cy = cusum_stat(y);
  CHECK(cy.raw == doctest::Approx(2.5 * cx.raw).epsilon(1e-12));
  CHECK(cy.argmax == cx.argmax);
}

TEST_CASE("reversal preserves the maxima") {
  const RealSeries x = random_series(44, 40);
  RealSeries y(x.rbegin(), x.rend());
  CHECK(cusum_stat(y).raw == doctest::Approx(cusum_stat(x).raw).epsilon(1e-9));
  CHECK(renyi_stat(y, TrimSpec::fixed(2)).raw ==
        doctest::Approx(renyi_stat(x, TrimSpec::fixed(2)).raw).epsilon(1e-9));
}

TEST_CASE("argmax ties break to the smallest index") {
  // symmetric bump: equal deviations at t=1 and t=3
  const RealSeries x{1, 0, 0, 1};
  CHECK(cusum_stat(x).argmax == 1);
  CHECK(renyi_stat(x, TrimSpec::fixed(1)).argmax == 1);
  // flat series: every candidate ties at zero
  const RealSeries z(10, 4.0);
  CHECK(cusum_stat(z).argmax == 1);
  CHECK(renyi_stat(z, TrimSpec::fixed(2)).argmax == 2);
}

TEST_CASE("self-normalized variant against known variance") {
  const RealSeries x = random_series(45, 64);
  const TrimSpec trim = TrimSpec::fixed(4);
  // known sigma^2 = 1 reproduces the plain scaled statistic
  const StatOutcome k1 =
      renyi_self_normalized(x, trim, VarianceConfig::known(1.0));
  const StatOutcome plain = renyi_stat(x, trim);
  CHECK(k1.scaled == doctest::Approx(plain.scaled).epsilon(1e-12));
  CHECK(k1.argmax == plain.argmax);
  // known sigma^2 = 4 halves it
  const StatOutcome k4 =
      renyi_self_normalized(x, trim, VarianceConfig::known(4.0));
  CHECK(k4.scaled == doctest::Approx(plain.scaled / 2.0).epsilon(1e-12));
}

TEST_CASE("self-normalized variant is scale invariant") {
  const RealSeries x = random_series(46, 64);
  const TrimSpec trim = TrimSpec::fixed(4);
  RealSeries y = x;
  for (double& v : y) v *= 37.0;
  const StatOutcome a = renyi_self_normalized(x, trim, VarianceConfig::split());
  const StatOutcome b = renyi_self_normalized(y, trim, VarianceConfig::split());
  CHECK(b.scaled == doctest::Approx(a.scaled).epsilon(1e-9));
  CHECK(b.argmax == a.argmax);
}

TEST_CASE("degenerate variance is refused") {
  // both sides of the best split are constant
  const RealSeries x{0, 0, 1, 1};
  CHECK_THROWS_AS(
      renyi_self_normalized(x, TrimSpec::fixed(1), VarianceConfig::split()),
      DegenerateVarianceError);
  // a DegenerateVarianceError is still a DataError for CLI mapping
  CHECK_THROWS_AS(
      renyi_self_normalized(x, TrimSpec::fixed(1), VarianceConfig::split()),
      DataError);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(cusum_stat(RealSeries{}), DataError);
  CHECK_THROWS_AS(cusum_stat(RealSeries{1.0}), DataError);
  RealSeries bad{1.0, std::nan(""), 2.0};
  CHECK_THROWS_AS(cusum_stat(bad), DataError);
  RealSeries inf{1.0, 2.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(renyi_stat(inf, TrimSpec::fixed(1)), DataError);
}

}  // TEST_SUITE
