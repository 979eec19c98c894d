#include "cpt/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "cpt/limit.hpp"
#include "cpt/stats.hpp"
#include "detail.hpp"

namespace cpt {

using detail::fmt_msg;

DesignMatrix DesignMatrix::zeros(int rows, int cols) {
  DesignMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.data.assign(std::size_t(rows) * std::size_t(cols), 0.0);
  return m;
}

namespace {

constexpr double kCondLimit = 1e10;  // "numerically nonsingular" threshold

Eigen::MatrixXd to_eigen(const DesignMatrix& Z) {
  Eigen::MatrixXd M(Z.rows, Z.cols);
  for (int r = 0; r < Z.rows; ++r)
    for (int c = 0; c < Z.cols; ++c) M(r, c) = Z.at(r, c);
  return M;
}

void check_design(const DesignMatrix& Z, const RealSeries& X) {
  if (Z.cols < 1) throw DataError("design matrix needs at least one column");
  if (Z.rows <= Z.cols)
    throw DataError(
        fmt_msg("design matrix needs rows > cols (got %d x %d)", Z.rows,
                Z.cols));
  if (int(X.size()) != Z.rows)
    throw DataError(fmt_msg("response length %zu does not match %d rows",
                            X.size(), Z.rows));
  for (double v : Z.data)
    if (!std::isfinite(v)) throw DataError("design matrix has a non-finite entry");
  require_series(X, 2);
}

}  // namespace

std::vector<double> ols_fit(const DesignMatrix& Z, const RealSeries& X) {
  check_design(Z, X);
  const Eigen::MatrixXd M = to_eigen(Z);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  // with column pivoting |R| diagonals are nonincreasing, so the first/last
  // ratio estimates the condition number
  const auto& R = qr.matrixR();
  const double r0 = std::fabs(R(0, 0));
  const double rk = std::fabs(R(Z.cols - 1, Z.cols - 1));
  const double cond = rk > 0.0 ? r0 / rk : std::numeric_limits<double>::infinity();
  if (!(cond < kCondLimit))
    throw DataError(
        fmt_msg("design matrix numerically singular: condition estimate "
                "%.3g exceeds %.1g",
                cond, kCondLimit));
  Eigen::VectorXd y(Z.rows);
  for (int r = 0; r < Z.rows; ++r) y(r) = X[std::size_t(r)];
  const Eigen::VectorXd beta = qr.solve(y);
  return std::vector<double>(beta.data(), beta.data() + beta.size());
}

RealSeries ols_residuals(const DesignMatrix& Z, const RealSeries& X) {
  const std::vector<double> beta = ols_fit(Z, X);
  RealSeries e(X.size());
  for (int r = 0; r < Z.rows; ++r) {
    double fit = 0.0;
    for (int c = 0; c < Z.cols; ++c) fit += Z.at(r, c) * beta[std::size_t(c)];
    e[std::size_t(r)] = X[std::size_t(r)] - fit;
  }
  return e;
}

namespace {

double nls_objective(const NlsProblem& p, const std::vector<double>& theta) {
  double acc = 0.0;
  std::vector<double> row(std::size_t(p.Z.cols));
  for (int r = 0; r < p.Z.rows; ++r) {
    for (int c = 0; c < p.Z.cols; ++c) row[std::size_t(c)] = p.Z.at(r, c);
    const double d = p.X[std::size_t(r)] - p.model(row, theta);
    acc += d * d;
  }
  if (!std::isfinite(acc))
    throw DataError("NLS objective is not finite");
  return acc;
}

std::vector<double> clamp_box(std::vector<double> v,
                              const std::vector<double>& lo,
                              const std::vector<double>& hi) {
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::clamp(v[i], lo[i], hi[i]);
  return v;
}

// Nelder-Mead on the box; every trial vertex is projected back into the box
// before evaluation, which keeps the simplex feasible throughout.
std::vector<double> nelder_mead(const NlsProblem& p,
                                const std::vector<double>& start,
                                double* best_obj) {
  const std::size_t d = start.size();
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, shrink = 0.5;
  const int max_iter = 500 * int(d);

  std::vector<std::vector<double>> vtx(d + 1, start);
  for (std::size_t i = 0; i < d; ++i) {
    double step = 0.1 * (p.upper[i] - p.lower[i]);
    if (step <= 0.0) step = 1e-8;
    vtx[i + 1][i] = std::clamp(start[i] + step, p.lower[i], p.upper[i]);
    if (vtx[i + 1][i] == start[i])
      vtx[i + 1][i] = std::clamp(start[i] - step, p.lower[i], p.upper[i]);
  }
  std::vector<double> f(d + 1);
  for (std::size_t i = 0; i <= d; ++i) f[i] = nls_objective(p, vtx[i]);

  for (int it = 0; it < max_iter; ++it) {
    // order ascending by objective (stable: earlier vertex wins ties)
    std::vector<std::size_t> idx(d + 1);
    for (std::size_t i = 0; i <= d; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    std::vector<std::vector<double>> sv(d + 1);
    std::vector<double> sf(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      sv[i] = vtx[idx[i]];
      sf[i] = f[idx[i]];
    }
    vtx.swap(sv);
    f.swap(sf);

    const double spread = std::fabs(f[d] - f[0]);
    if (spread <= 1e-12 * (1.0 + std::fabs(f[0]))) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) centroid[j] += vtx[i][j];
    }
    for (std::size_t j = 0; j < d; ++j) centroid[j] /= double(d);

    auto mix = [&](double coef) {
      std::vector<double> v(d);
      for (std::size_t j = 0; j < d; ++j)
        v[j] = centroid[j] + coef * (centroid[j] - vtx[d][j]);
      return clamp_box(std::move(v), p.lower, p.upper);
    };

    const std::vector<double> xr = mix(alpha);
    const double fr = nls_objective(p, xr);
    if (fr < f[0]) {
      const std::vector<double> xe = mix(gamma);
      const double fe = nls_objective(p, xe);
      if (fe < fr) {
        vtx[d] = xe;
        f[d] = fe;
      } else {
        vtx[d] = xr;
        f[d] = fr;
      }
    } else if (fr < f[d - 1]) {
      vtx[d] = xr;
      f[d] = fr;
    } else {
      const std::vector<double> xc = mix(-rho);
      const double fc = nls_objective(p, xc);
      if (fc < f[d]) {
        vtx[d] = xc;
        f[d] = fc;
      } else {
        for (std::size_t i = 1; i <= d; ++i) {
          for (std::size_t j = 0; j < d; ++j)
            vtx[i][j] = vtx[0][j] + shrink * (vtx[i][j] - vtx[0][j]);
          vtx[i] = clamp_box(std::move(vtx[i]), p.lower, p.upper);
          f[i] = nls_objective(p, vtx[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= d; ++i)
    if (f[i] < f[best]) best = i;
  *best_obj = f[best];
  return vtx[best];
}

}  // namespace

std::vector<double> nls_fit(const NlsProblem& p) {
  if (!p.model) throw DataError("NLS problem has no model function");
  const std::size_t d = p.lower.size();
  if (d == 0 || p.upper.size() != d)
    throw DataError("NLS bounds must be non-empty and of equal length");
  for (std::size_t i = 0; i < d; ++i)
    if (!std::isfinite(p.lower[i]) || !std::isfinite(p.upper[i]) ||
        !(p.lower[i] <= p.upper[i]))
      throw DataError(fmt_msg("NLS bound %zu is not a finite interval", i));
  check_design(p.Z, p.X);

  // multi-start grid: 5 levels on the first three coordinates, midpoints
  // beyond; enumeration order is lexicographic and ties keep the earliest
  const std::size_t gridded = std::min<std::size_t>(d, 3);
  std::size_t n_starts = 1;
  for (std::size_t i = 0; i < gridded; ++i) n_starts *= 5;

  std::vector<double> best_theta;
  double best_obj = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n_starts; ++s) {
    std::vector<double> start(d);
    std::size_t rem = s;
    for (std::size_t i = 0; i < d; ++i) {
      if (i < gridded) {
        const std::size_t level = rem % 5;
        rem /= 5;
        start[i] =
            p.lower[i] + (p.upper[i] - p.lower[i]) * (double(level) + 0.5) / 5.0;
      } else {
        start[i] = 0.5 * (p.lower[i] + p.upper[i]);
      }
    }
    double obj = 0.0;
    const std::vector<double> theta = nelder_mead(p, start, &obj);
    if (obj < best_obj) {
      best_obj = obj;
      best_theta = theta;
    }
  }
  if (best_theta.empty()) throw DataError("NLS: no start converged");
  return best_theta;
}

RealSeries nls_residuals(const NlsProblem& p, const std::vector<double>& theta) {
  RealSeries e(p.X.size());
  std::vector<double> row(std::size_t(p.Z.cols));
  for (int r = 0; r < p.Z.rows; ++r) {
    for (int c = 0; c < p.Z.cols; ++c) row[std::size_t(c)] = p.Z.at(r, c);
    e[std::size_t(r)] = p.X[std::size_t(r)] - p.model(row, theta);
  }
  return e;
}

double gmm_fit(const GmmProblem& p) {
  if (!p.moment) throw DataError("GMM problem has no moment function");
  if (!(p.lower < p.upper))
    throw DataError("GMM interval is empty");
  require_series(p.x, 1);

  auto F = [&](double theta) {
    double acc = 0.0;
    for (double xv : p.x) acc += p.moment(xv, theta);
    if (!std::isfinite(acc)) throw DataError("GMM moment sum is not finite");
    return acc;
  };

  // left-to-right scan for the first bracket keeps the smallest root
  const int n_cells = 256;
  double a = p.lower;
  double fa = F(a);
  double b = 0.0, fb = 0.0;
  bool found = false;
  for (int i = 1; i <= n_cells; ++i) {
    b = p.lower + (p.upper - p.lower) * double(i) / n_cells;
    fb = F(b);
    if (fa == 0.0 || fa * fb <= 0.0) {
      found = true;
      break;
    }
    a = b;
    fa = fb;
  }
  if (!found)
    throw DataError("moment equation has no root in the given interval");
  if (fa == 0.0) return a;

  while (b - a > 1e-10) {
    const double mid = 0.5 * (a + b);
    const double fm = F(mid);
    if (fm == 0.0) return mid;
    if (fa * fm < 0.0) {
      b = mid;
    } else {
      a = mid;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

RealSeries gmm_moment_series(const GmmProblem& p, double theta) {
  RealSeries m(p.x.size());
  for (std::size_t i = 0; i < p.x.size(); ++i) m[i] = p.moment(p.x[i], theta);
  return m;
}

TestOutcome residual_change_test(const RealSeries& residuals,
                                 const TrimSpec& trim,
                                 const VarianceConfig& vcfg) {
  const StatOutcome so = renyi_self_normalized(residuals, trim, vcfg);
  TestOutcome out;
  out.statistic = "renyi";
  out.raw = so.raw;
  out.scaled = so.scaled;
  out.p_value = p_value(LimitLaw::max_two(), so.scaled);
  out.argmax = so.argmax;
  out.trim = so.trim;
  return out;
}

}  // namespace cpt
