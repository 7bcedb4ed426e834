#pragma once

// Brute-force reference implementations, deliberately independent of the
// library: long double sums, normal equations, Gauss-Jordan elimination.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace oracle {

inline double product_moment_r(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const auto n = x.size();
  long double sx = 0, sy = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    sx += x(i);
    sy += y(i);
  }
  const long double mx = sx / n, my = sy / n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const long double dx = x(i) - mx, dy = y(i) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

struct Fit {
  std::vector<double> coefficients;  // intercept first
  std::vector<double> standard_errors;
  double r_squared = 0.0;
};

// Solves (X'X) b = X'y with an explicit intercept column and inverts X'X by
// Gauss-Jordan with partial pivoting.
inline Fit normal_equations(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(predictors.rows());
  const int p = static_cast<int>(predictors.cols()) + 1;
  auto x = [&](int row, int col) -> long double {
    return col == 0 ? 1.0L : static_cast<long double>(predictors(row, col - 1));
  };
  // Augmented [X'X | I | X'y].
  std::vector<std::vector<long double>> m(p, std::vector<long double>(2 * p + 1, 0.0L));
  for (int a = 0; a < p; ++a) {
    for (int b = 0; b < p; ++b) {
      for (int i = 0; i < n; ++i) m[a][b] += x(i, a) * x(i, b);
    }
    m[a][p + a] = 1.0L;
    for (int i = 0; i < n; ++i) m[a][2 * p] += x(i, a) * y(i);
  }
  for (int col = 0; col < p; ++col) {
    int pivot = col;
    for (int r = col + 1; r < p; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    }
    if (m[pivot][col] == 0.0L) throw std::runtime_error("singular normal equations");
    std::swap(m[pivot], m[col]);
    const long double d = m[col][col];
    for (auto& v : m[col]) v /= d;
    for (int r = 0; r < p; ++r) {
      if (r == col) continue;
      const long double factor = m[r][col];
      for (int c = 0; c <= 2 * p; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  Fit fit;
  long double rss = 0, mean = 0, tss = 0;
  for (int i = 0; i < n; ++i) mean += y(i);
  mean /= n;
  for (int i = 0; i < n; ++i) {
    long double pred = 0;
    for (int a = 0; a < p; ++a) pred += m[a][2 * p] * x(i, a);
    rss += (y(i) - pred) * (y(i) - pred);
    tss += (y(i) - mean) * (y(i) - mean);
  }
  const long double sigma2 = rss / (n - p);
  for (int a = 0; a < p; ++a) {
    fit.coefficients.push_back(static_cast<double>(m[a][2 * p]));
    fit.standard_errors.push_back(static_cast<double>(std::sqrt(sigma2 * m[a][p + a])));
  }
  fit.r_squared = static_cast<double>(1.0L - rss / tss);
  return fit;
}

}  // namespace oracle
