#pragma once
// Change-point statistics on a raw series: the CUSUM family and the trimmed
// mean-difference (Renyi) family.
//
// Conventions shared by every function here:
//  - indices are 1-based in the math and in reported argmax values;
//  - argmax ties break toward the smallest index, deterministically;
//  - trimmed ranges are inclusive on both ends, t_T <= t <= T - t_T.

#include "cpt/series.hpp"
#include "cpt/variance.hpp"

namespace cpt {

// A_T = T^(-1/2) max_{1<=t<=T} |S_t - (t/T) S_T|.
// scaled == raw; divide by a long-run sigma externally before p-values.
StatOutcome cusum_stat(const RealSeries& x);

// A_T(tau) = T^(-1/2) max_{1<=t<T} ((t/T)(1-t/T))^(-tau) |S_t - (t/T) S_T|.
// tau >= 1/2 is rejected: the unweighted-range sup diverges there, and that
// regime is served by trimmed_std_cusum and darling_erdos_stat instead.
StatOutcome weighted_cusum_stat(const RealSeries& x, double tau);

// Trimmed fully-standardized CUSUM,
// T^(-1/2) max_{t_T<=t<=T-t_T} ((t/T)(1-t/T))^(-1/2) |S_t - (t/T) S_T|.
StatOutcome trimmed_std_cusum(const RealSeries& x, const TrimSpec& trim);
StatOutcome trimmed_std_cusum_k(const RealSeries& x, int t_T);

// Trimmed mean-difference statistic
//   raw = max_{t_T<=t<=T-t_T} |mean(x[1..t]) - mean(x[t+1..T])|,
//   scaled = sqrt(t_T) * raw  (divide by sigma externally when it is known).
StatOutcome renyi_stat(const RealSeries& x, const TrimSpec& trim);

// Asymmetric variant: max over t_T <= t <= T - s_T.
StatOutcome renyi_stat_asym(const RealSeries& x, int t_T, int s_T);

// Self-normalized variant: raw = scaled =
//   sqrt(t_T) * max_{t_T<=t<=T-t_T} |mean diff at t| / sigma_hat(x, t),
// with sigma_hat recomputed at every candidate t from vcfg. Any
// sigma_hat^2 at or below vcfg.floor_eps raises DegenerateVarianceError.
StatOutcome renyi_self_normalized(const RealSeries& x, const TrimSpec& trim,
                                  const VarianceConfig& vcfg);

// Extreme-value standardized CUSUM, E_T = a_T * A - M_T where A is
// trimmed_std_cusum with t_T = 1 and, with y = T / (log T)^(3/2),
//   a_T = sqrt(2 loglog y),
//   M_T = 2 loglog y - (1/2) logloglog y + (1/2) log pi.
// Defined only for y > e (T >= 9); smaller T raises DataError instead of
// returning NaN. scaled == raw; for a variance-normalized value recompute
// a_T * (A / sigma_hat) - M_T with sigma_hat taken at A's argmax.
StatOutcome darling_erdos_stat(const RealSeries& x);

// The a_T and M_T normalizers above, exposed for composition and tests.
double darling_erdos_scale(int T);
double darling_erdos_center(int T);

}  // namespace cpt
