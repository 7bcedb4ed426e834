#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace aivalue {

using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

struct CorrelationResult {
  double r = 0.0;
  std::size_t n = 0;
  double t_stat = 0.0;
  double p_value = 1.0;  // two-sided, Student-t with n - 2 df

  bool operator==(const CorrelationResult&) const = default;
};

/// Product-moment correlation with its two-sided significance.
CorrelationResult pearson(const VectorRef& xs, const VectorRef& ys);
CorrelationResult pearson(std::span<const double> xs, std::span<const double> ys);

/// Predictor columns with names; the intercept is implicit.
struct Design {
  std::vector<std::string> names;
  Eigen::MatrixXd values;  // rows = observations

  Design() = default;
  Design(std::vector<std::string> column_names, Eigen::MatrixXd columns);

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  Eigen::Index index_of(const std::string& name) const;  // usage error when absent
};

struct RegressionResult {
  std::vector<std::string> names;      // "(intercept)" first
  Eigen::VectorXd coefficients;        // intercept first
  Eigen::VectorXd standard_errors;
  Eigen::VectorXd t_stats;
  Eigen::VectorXd p_values;
  Eigen::VectorXd standardized_betas;  // predictors only, from a z-scored refit
  Eigen::VectorXd residuals;
  double r_squared = 0.0;
  double adjusted_r_squared = 0.0;
  double residual_sum_squares = 0.0;
  Eigen::Index observations = 0;
  Eigen::Index residual_df = 0;

  Eigen::VectorXd predict(const Eigen::MatrixXd& predictors) const;
};

/// Relative pivot threshold below which the design is declared rank deficient.
inline constexpr double kRankThreshold = 1e-10;

/// Ordinary least squares with intercept, via column-pivoted Householder QR.
/// Needs rows >= columns + 2 and a full-rank design; a singular design raises
/// an error naming the dependent columns.
RegressionResult ols(const Design& design, const VectorRef& y);
RegressionResult ols(const Eigen::MatrixXd& predictors, const VectorRef& y);

/// Appends one mean-centered product column per group, named "a*b[*c...]".
/// Groups need at least two distinct existing columns.
Design interaction_design(const Design& design,
                          const std::vector<std::vector<std::string>>& groups);

enum class PreferredFit { linear, quadratic };

struct CurveFitComparison {
  double r2_linear = 0.0;
  double r2_quadratic = 0.0;
  double adj_r2_linear = 0.0;
  double adj_r2_quadratic = 0.0;
  double quadratic_coefficient = 0.0;
  double f_stat_quadratic_term = 0.0;
  double p_value_quadratic_term = 1.0;
  PreferredFit preferred = PreferredFit::linear;

  bool operator==(const CurveFitComparison&) const = default;
};

/// Fits y ~ x and y ~ x + x^2; the quadratic model is preferred only when the
/// partial F-test on its extra term is significant at `alpha`.
CurveFitComparison curve_fit_compare(const VectorRef& x, const VectorRef& y, double alpha = 0.05);

struct GroupFit {
  std::size_t n = 0;
  double standardized_beta = 0.0;
  double p_value = 1.0;

  bool operator==(const GroupFit&) const = default;
};

struct ModerationReport {
  std::string moderator_name;
  double threshold = 0.0;
  GroupFit low_group;   // moderator < threshold
  GroupFit high_group;  // moderator >= threshold
  double attenuation = 0.0;     // high beta / low beta
  double difference_z = 0.0;    // Fisher z for low beta > high beta
  double difference_p = 1.0;    // one-sided

  bool operator==(const ModerationReport&) const = default;
};

/// Splits the sample on the moderator and regresses outcome on predictor in
/// each group. Each group needs at least three observations.
ModerationReport moderation_analysis(const std::string& moderator_name, const VectorRef& moderator,
                                     const VectorRef& predictor, const VectorRef& outcome,
                                     double threshold);

const char* to_string(PreferredFit fit) noexcept;

}  // namespace aivalue
