#include "aivalue/ahp.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace aivalue {

PairwiseMatrix::PairwiseMatrix(Eigen::MatrixXd entries) : a_(std::move(entries)) {
  const Eigen::Index n = a_.rows();
  if (n != a_.cols()) fail(ErrorKind::validation, "pairwise matrix must be square");
  if (n < kMinOrder || n > kMaxOrder) {
    std::ostringstream msg;
    msg << "pairwise matrix order " << n << " outside [" << kMinOrder << ", " << kMaxOrder << "]";
    fail(ErrorKind::validation, msg.str());
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = a_(i, j);
      if (!std::isfinite(v) || v <= 0.0) {
        std::ostringstream msg;
        msg << "pairwise entry (" << i + 1 << ", " << j + 1 << ") = " << v << " must be positive";
        fail(ErrorKind::validation, msg.str());
      }
      if (i == j && std::abs(v - 1.0) > kReciprocityTolerance) {
        std::ostringstream msg;
        msg << "pairwise diagonal (" << i + 1 << ", " << i + 1 << ") = " << v << ", expected 1";
        fail(ErrorKind::validation, msg.str());
      }
      if (i < j && std::abs(a_(j, i) - 1.0 / v) > kReciprocityTolerance) {
        std::ostringstream msg;
        msg << "pairwise entries (" << i + 1 << ", " << j + 1 << ") = " << v << " and ("
            << j + 1 << ", " << i + 1 << ") = " << a_(j, i) << " are not reciprocal";
        fail(ErrorKind::validation, msg.str());
      }
    }
  }
}

PairwiseMatrix PairwiseMatrix::from_generator(const Eigen::Ref<const Eigen::VectorXd>& w) {
  if (!w.allFinite() || (w.array() <= 0.0).any()) {
    fail(ErrorKind::validation, "generator weights must be positive and finite");
  }
  Eigen::MatrixXd a = w * w.cwiseInverse().transpose();
  a.diagonal().setOnes();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) a(j, i) = 1.0 / a(i, j);
  }
  return PairwiseMatrix(std::move(a));
}

bool AhpResult::operator==(const AhpResult& other) const {
  return weights.size() == other.weights.size() && weights == other.weights &&
         lambda_max == other.lambda_max && consistency_index == other.consistency_index &&
         consistency_ratio == other.consistency_ratio && acceptable == other.acceptable &&
         iterations == other.iterations;
}

double random_index(Eigen::Index order) {
  static constexpr std::array<double, 8> kTable = {0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45};
  if (order < 2 || order > 9) {
    std::ostringstream msg;
    msg << "no random index for order " << order << " (supported 2..9)";
    fail(ErrorKind::domain, msg.str());
  }
  return kTable[static_cast<std::size_t>(order - 2)];
}

AhpResult ahp_weights(const PairwiseMatrix& matrix, const PowerIterationOptions& options) {
  const auto pair = principal_eigenpair(matrix.entries(), options);
  const auto n = static_cast<double>(matrix.order());

  AhpResult out;
  out.weights = pair.vector;
  out.lambda_max = pair.value;
  out.iterations = pair.iterations;
  out.consistency_index = (out.lambda_max - n) / (n - 1.0);
  const double ri = random_index(matrix.order());
  // Every 2x2 reciprocal matrix is consistent; RI(2) = 0 by convention.
  out.consistency_ratio = ri > 0.0 ? out.consistency_index / ri : 0.0;
  out.acceptable = out.consistency_ratio < kConsistencyCutoff;
  return out;
}

WeightProfile profile_from_ahp(const AhpResult& result, bool override_consistency) {
  if (result.weights.size() != 5) {
    std::ostringstream msg;
    msg << "weight profile needs 5 AHP weights, got " << result.weights.size();
    fail(ErrorKind::usage, msg.str());
  }
  if (!result.acceptable && !override_consistency) {
    std::ostringstream msg;
    msg << "consistency ratio " << result.consistency_ratio << " >= " << kConsistencyCutoff
        << "; revise the judgments or override";
    fail(ErrorKind::consistency, msg.str());
  }
  const double first = result.weights(0);
  if (!(first > 0.0)) fail(ErrorKind::validation, "first AHP weight must be positive");

  WeightProfile profile;
  profile.alpha = 1.0;
  profile.beta = result.weights(1) / first;
  profile.gamma = result.weights(2) / first;
  profile.delta = result.weights(3) / first;
  profile.lambda = result.weights(4) / first;
  profile.provenance = WeightProvenance::ahp;
  validate(profile);
  return profile;
}

}  // namespace aivalue
