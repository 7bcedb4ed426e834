#include "aivalue/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/QR>

#include "aivalue/errors.hpp"
#include "aivalue/special_functions.hpp"

namespace aivalue {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(const VectorRef& v, const char* what) {
  if (!v.allFinite()) fail(ErrorKind::validation, std::string(what) + " contains non-finite values");
}

double centered_sum_squares(const VectorRef& v) {
  return (v.array() - v.mean()).square().sum();
}

Eigen::VectorXd zscore(const VectorRef& v) {
  const double sd = std::sqrt(centered_sum_squares(v) / static_cast<double>(v.size() - 1));
  if (sd == 0.0) return Eigen::VectorXd::Zero(v.size());
  return (v.array() - v.mean()) / sd;
}

// Coefficients from a pivoted QR of [1, X]; throws on rank deficiency.
struct QrFit {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  Eigen::VectorXd coefficients;
};

QrFit fit_with_intercept(const Design& design, const VectorRef& y) {
  const Eigen::Index n = design.rows();
  const Eigen::Index k = design.cols();
  Eigen::MatrixXd x1(n, k + 1);
  x1.col(0).setOnes();
  x1.rightCols(k) = design.values;

  QrFit fit;
  fit.qr.setThreshold(kRankThreshold);
  fit.qr.compute(x1);
  if (fit.qr.rank() < k + 1) {
    std::ostringstream msg;
    msg << "design is rank deficient (rank " << fit.qr.rank() << " of " << k + 1
        << "); dependent columns:";
    const auto& perm = fit.qr.colsPermutation().indices();
    for (Eigen::Index i = fit.qr.rank(); i < k + 1; ++i) {
      const Eigen::Index col = perm(i);
      msg << ' ' << (col == 0 ? std::string("(intercept)") : design.names[col - 1]);
    }
    fail(ErrorKind::singular, msg.str());
  }
  fit.coefficients = fit.qr.solve(y);
  return fit;
}

// Diagonal of (X'X)^-1 from the pivoted R factor: X P = Q R.
Eigen::VectorXd inverse_gram_diagonal(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr) {
  const Eigen::Index p = qr.cols();
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  // (X'X)^-1 = P R^-1 R^-T P'
  const Eigen::VectorXd permuted = r_inv.rowwise().squaredNorm();
  Eigen::VectorXd diag(p);
  const auto& perm = qr.colsPermutation().indices();
  for (Eigen::Index i = 0; i < p; ++i) diag(perm(i)) = permuted(i);
  return diag;
}

}  // namespace

CorrelationResult pearson(const VectorRef& xs, const VectorRef& ys) {
  if (xs.size() != ys.size()) {
    std::ostringstream msg;
    msg << "pearson: series lengths differ (" << xs.size() << " vs " << ys.size() << ")";
    fail(ErrorKind::usage, msg.str());
  }
  if (xs.size() < 3) fail(ErrorKind::usage, "pearson: need at least 3 pairs");
  require_finite(xs, "pearson x");
  require_finite(ys, "pearson y");

  const Eigen::ArrayXd dx = xs.array() - xs.mean();
  const Eigen::ArrayXd dy = ys.array() - ys.mean();
  const double sxx = dx.square().sum();
  const double syy = dy.square().sum();
  if (sxx == 0.0 || syy == 0.0) {
    fail(ErrorKind::degenerate, "pearson: a series has zero variance");
  }

  CorrelationResult out;
  out.n = static_cast<std::size_t>(xs.size());
  out.r = std::clamp((dx * dy).sum() / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(out.n) - 2.0;
  const double one_minus = 1.0 - out.r * out.r;
  out.t_stat = one_minus > 0.0 ? out.r * std::sqrt(df / one_minus) : std::copysign(kInf, out.r);
  out.p_value = student_t_two_sided(out.t_stat, df);
  return out;
}

CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys) {
  return pearson(Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size())),
                 Eigen::Map<const Eigen::VectorXd>(ys.data(), static_cast<Eigen::Index>(ys.size())));
}

Design::Design(std::vector<std::string> column_names, Eigen::MatrixXd columns)
    : names(std::move(column_names)), values(std::move(columns)) {
  if (static_cast<Eigen::Index>(names.size()) != values.cols()) {
    fail(ErrorKind::usage, "design: column name count does not match column count");
  }
}

Eigen::Index Design::index_of(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) fail(ErrorKind::usage, "design has no column '" + name + "'");
  return static_cast<Eigen::Index>(it - names.begin());
}

Eigen::VectorXd RegressionResult::predict(const Eigen::MatrixXd& predictors) const {
  return (predictors * coefficients.tail(coefficients.size() - 1)).array() + coefficients(0);
}

RegressionResult ols(const Design& design, const VectorRef& y) {
  const Eigen::Index n = design.rows();
  const Eigen::Index k = design.cols();
  if (y.size() != n) {
    fail(ErrorKind::usage, "ols: response length does not match design rows");
  }
  if (n < k + 2) {
    std::ostringstream msg;
    msg << "ols: " << n << " rows cannot support " << k << " predictors plus intercept";
    fail(ErrorKind::usage, msg.str());
  }
  if (!design.values.allFinite()) fail(ErrorKind::validation, "ols: design has non-finite values");
  require_finite(y, "ols response");

  const QrFit fit = fit_with_intercept(design, y);

  RegressionResult out;
  out.names.reserve(static_cast<std::size_t>(k + 1));
  out.names.emplace_back("(intercept)");
  out.names.insert(out.names.end(), design.names.begin(), design.names.end());
  out.coefficients = fit.coefficients;
  out.observations = n;
  out.residual_df = n - k - 1;

  Eigen::VectorXd fitted = (design.values * out.coefficients.tail(k)).array() + out.coefficients(0);
  out.residuals = y - fitted;
  out.residual_sum_squares = out.residuals.squaredNorm();
  const double sst = centered_sum_squares(y);
  out.r_squared = sst > 0.0 ? std::clamp(1.0 - out.residual_sum_squares / sst, 0.0, 1.0) : 0.0;
  out.adjusted_r_squared = 1.0 - (1.0 - out.r_squared) * static_cast<double>(n - 1) /
                                     static_cast<double>(out.residual_df);

  // A residual norm at rounding level is an exact fit; report sigma = 0.
  const double scale = std::max(sst, y.squaredNorm());
  const bool exact_fit = out.residual_sum_squares <= 1e-24 * scale;
  const double sigma2 =
      exact_fit ? 0.0 : out.residual_sum_squares / static_cast<double>(out.residual_df);

  out.standard_errors = (sigma2 * inverse_gram_diagonal(fit.qr).array()).sqrt();
  out.t_stats.resize(k + 1);
  out.p_values.resize(k + 1);
  const double coef_scale = std::max(1.0, out.coefficients.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i <= k; ++i) {
    const double b = out.coefficients(i);
    if (out.standard_errors(i) > 0.0) {
      out.t_stats(i) = b / out.standard_errors(i);
    } else {
      out.t_stats(i) = std::abs(b) <= 1e-10 * coef_scale ? 0.0 : std::copysign(kInf, b);
    }
    out.p_values(i) = student_t_two_sided(out.t_stats(i), static_cast<double>(out.residual_df));
  }

  Design standardized(design.names, Eigen::MatrixXd(n, k));
  for (Eigen::Index j = 0; j < k; ++j) standardized.values.col(j) = zscore(design.values.col(j));
  out.standardized_betas = fit_with_intercept(standardized, zscore(y)).coefficients.tail(k);
  return out;
}

RegressionResult ols(const Eigen::MatrixXd& predictors, const VectorRef& y) {
  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < predictors.cols(); ++j) names.push_back("x" + std::to_string(j + 1));
  return ols(Design(std::move(names), predictors), y);
}

Design interaction_design(const Design& design,
                          const std::vector<std::vector<std::string>>& groups) {
  Design out = design;
  std::set<std::string> seen(design.names.begin(), design.names.end());
  for (const auto& group : groups) {
    if (group.size() < 2) fail(ErrorKind::usage, "interaction needs at least two columns");
    std::string name;
    Eigen::VectorXd product = Eigen::VectorXd::Ones(design.rows());
    std::set<std::string> members;
    for (const auto& column : group) {
      if (!members.insert(column).second) {
        fail(ErrorKind::usage, "interaction repeats column '" + column + "'");
      }
      const Eigen::VectorXd c = design.values.col(design.index_of(column));
      product.array() *= c.array() - c.mean();
      name += (name.empty() ? "" : "*") + column;
    }
    if (!seen.insert(name).second) fail(ErrorKind::usage, "duplicate interaction '" + name + "'");
    out.names.push_back(name);
    out.values.conservativeResize(Eigen::NoChange, out.values.cols() + 1);
    out.values.col(out.values.cols() - 1) = product;
  }
  return out;
}

CurveFitComparison curve_fit_compare(const VectorRef& x, const VectorRef& y, double alpha) {
  if (x.size() != y.size()) fail(ErrorKind::usage, "curve fit: x and y lengths differ");
  if (x.size() < 5) fail(ErrorKind::usage, "curve fit: need at least 5 points");
  require_finite(x, "curve fit x");
  std::set<double> distinct(x.data(), x.data() + x.size());
  if (distinct.size() < 3) {
    fail(ErrorKind::degenerate, "curve fit: x needs at least 3 distinct values");
  }

  const Eigen::Index n = x.size();
  const RegressionResult linear = ols(Design({"x"}, x), y);
  Eigen::MatrixXd xq(n, 2);
  xq.col(0) = x;
  xq.col(1) = x.array().square();
  const RegressionResult quadratic = ols(Design({"x", "x^2"}, xq), y);

  CurveFitComparison out;
  out.r2_linear = linear.r_squared;
  out.adj_r2_linear = linear.adjusted_r_squared;
  out.quadratic_coefficient = quadratic.coefficients(2);

  // Nested models: the larger one can never fit worse; clip rounding noise.
  const double rss_linear = linear.residual_sum_squares;
  const double rss_quadratic = std::min(quadratic.residual_sum_squares, rss_linear);
  out.r2_quadratic = std::max(quadratic.r_squared, linear.r_squared);
  out.adj_r2_quadratic = 1.0 - (1.0 - out.r2_quadratic) * static_cast<double>(n - 1) /
                                   static_cast<double>(n - 3);

  const double sst = centered_sum_squares(y);
  const double noise_floor = 1e-24 * std::max(sst, y.squaredNorm());
  if (rss_linear <= noise_floor) {
    out.f_stat_quadratic_term = 0.0;  // linear already exact
    out.p_value_quadratic_term = 1.0;
  } else if (rss_quadratic <= noise_floor) {
    out.f_stat_quadratic_term = kInf;
    out.p_value_quadratic_term = 0.0;
  } else {
    out.f_stat_quadratic_term =
        (rss_linear - rss_quadratic) / (rss_quadratic / static_cast<double>(n - 3));
    out.p_value_quadratic_term =
        f_upper_tail(out.f_stat_quadratic_term, 1.0, static_cast<double>(n - 3));
  }
  out.preferred =
      out.p_value_quadratic_term < alpha ? PreferredFit::quadratic : PreferredFit::linear;
  return out;
}

ModerationReport moderation_analysis(const std::string& moderator_name, const VectorRef& moderator,
                                     const VectorRef& predictor, const VectorRef& outcome,
                                     double threshold) {
  const Eigen::Index n = moderator.size();
  if (predictor.size() != n || outcome.size() != n) {
    fail(ErrorKind::usage, "moderation: series lengths differ");
  }
  std::vector<Eigen::Index> low, high;
  for (Eigen::Index i = 0; i < n; ++i) (moderator(i) < threshold ? low : high).push_back(i);
  if (low.size() < 3 || high.size() < 3) {
    std::ostringstream msg;
    msg << "moderation split on " << moderator_name << " at " << threshold << " gives groups of "
        << low.size() << " (low) and " << high.size() << " (high); each needs >= 3";
    fail(ErrorKind::split, msg.str());
  }

  auto group_fit = [&](const std::vector<Eigen::Index>& rows) {
    const auto count = static_cast<Eigen::Index>(rows.size());
    Eigen::VectorXd x(count), y(count);
    for (Eigen::Index i = 0; i < count; ++i) {
      x(i) = predictor(rows[static_cast<std::size_t>(i)]);
      y(i) = outcome(rows[static_cast<std::size_t>(i)]);
    }
    const RegressionResult fit = ols(Design({moderator_name + ":predictor"}, x), y);
    return GroupFit{rows.size(), fit.standardized_betas(0), fit.p_values(1)};
  };

  ModerationReport out;
  out.moderator_name = moderator_name;
  out.threshold = threshold;
  out.low_group = group_fit(low);
  out.high_group = group_fit(high);
  out.attenuation = out.low_group.standardized_beta != 0.0
                        ? out.high_group.standardized_beta / out.low_group.standardized_beta
                        : std::numeric_limits<double>::quiet_NaN();

  // Fisher z test of low beta > high beta; needs n > 3 in both groups.
  if (low.size() > 3 && high.size() > 3) {
    constexpr double kMaxR = 1.0 - 1e-12;
    const double z_low = std::atanh(std::clamp(out.low_group.standardized_beta, -kMaxR, kMaxR));
    const double z_high = std::atanh(std::clamp(out.high_group.standardized_beta, -kMaxR, kMaxR));
    const double se = std::sqrt(1.0 / static_cast<double>(low.size() - 3) +
                                1.0 / static_cast<double>(high.size() - 3));
    out.difference_z = (z_low - z_high) / se;
    out.difference_p = normal_upper_tail(out.difference_z);
  } else {
    out.difference_z = std::numeric_limits<double>::quiet_NaN();
    out.difference_p = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

const char* to_string(PreferredFit fit) noexcept {
  return fit == PreferredFit::quadratic ? "quadratic" : "linear";
}

}  // namespace aivalue
