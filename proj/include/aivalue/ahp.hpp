#pragma once

#include <Eigen/Core>

#include "aivalue/errors.hpp"
#include "aivalue/model.hpp"

namespace aivalue {

/// Reciprocal pairwise-comparison matrix of order 2..9: positive entries,
/// unit diagonal, a_ji = 1 / a_ij within 1e-9.
class PairwiseMatrix {
 public:
  static constexpr Eigen::Index kMinOrder = 2;
  static constexpr Eigen::Index kMaxOrder = 9;
  static constexpr double kReciprocityTolerance = 1e-9;

  explicit PairwiseMatrix(Eigen::MatrixXd entries);

  /// Perfectly consistent matrix a_ij = w_i / w_j.
  static PairwiseMatrix from_generator(const Eigen::Ref<const Eigen::VectorXd>& weights);

  const Eigen::MatrixXd& entries() const { return a_; }
  Eigen::Index order() const { return a_.rows(); }

 private:
  Eigen::MatrixXd a_;
};

struct AhpResult {
  Eigen::VectorXd weights;  // sums to 1
  double lambda_max = 0.0;
  double consistency_index = 0.0;
  double consistency_ratio = 0.0;
  bool acceptable = true;
  int iterations = 0;

  bool operator==(const AhpResult& other) const;
};

inline constexpr double kConsistencyCutoff = 0.10;

struct PowerIterationOptions {
  double relative_tolerance = 1e-12;
  int max_iterations = 10'000;
};

template <typename Scalar>
struct PrincipalEigenpair {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;  // sums to 1
  Scalar value;
  int iterations;
};

/// Power iteration for the Perron vector of a positive matrix. The vector is
/// renormalized to unit sum each step; the eigenvalue is the Rayleigh quotient.
template <typename Derived>
PrincipalEigenpair<typename Derived::Scalar> principal_eigenpair(
    const Eigen::MatrixBase<Derived>& a, const PowerIterationOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = a.rows();
  Vector w = Vector::Constant(n, Scalar(1) / Scalar(n));
  for (int it = 1; it <= options.max_iterations; ++it) {
    Vector next = a * w;
    next /= next.sum();
    const Scalar change = (next - w).cwiseAbs().maxCoeff();
    w = std::move(next);
    if (change <= Scalar(options.relative_tolerance) * w.cwiseAbs().maxCoeff()) {
      const Scalar rayleigh = w.dot(a * w) / w.squaredNorm();
      return {std::move(w), rayleigh, it};
    }
  }
  fail(ErrorKind::numeric, "power iteration did not converge in " +
                               std::to_string(options.max_iterations) + " iterations");
}

/// Saaty random consistency index for orders 2..9.
double random_index(Eigen::Index order);

AhpResult ahp_weights(const PairwiseMatrix& matrix, const PowerIterationOptions& options = {});

/// Maps a five-criterion AHP result, ordered (entropy reduction, efficiency,
/// cost, quality, risk), onto a weight profile with alpha pinned to 1.
WeightProfile profile_from_ahp(const AhpResult& result, bool override_consistency = false);

}  // namespace aivalue
