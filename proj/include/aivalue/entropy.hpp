#pragma once

#include <cmath>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace aivalue {

/// Shannon entropy in bits of a probability vector, with 0 log 0 = 0.
/// Does not validate; callers go through DiscreteDistribution for that.
template <typename Derived>
typename Derived::Scalar entropy_bits(const Eigen::DenseBase<Derived>& probabilities) {
  using Scalar = typename Derived::Scalar;
  Scalar h(0);
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    const Scalar p = probabilities(i);
    if (p > Scalar(0)) h -= p * std::log2(p);
  }
  // Rounding can push a near-uniform vector a few ulps past the log2(n) bound.
  const Scalar ceiling = std::log2(Scalar(probabilities.size()));
  return h > ceiling ? ceiling : h;
}

/// A validated finite probability distribution. Construction checks
/// non-emptiness, p_i in [0, 1] and |sum - 1| <= 1e-9, then renormalizes.
class DiscreteDistribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit DiscreteDistribution(std::span<const double> probabilities);
  explicit DiscreteDistribution(const Eigen::Ref<const Eigen::VectorXd>& probabilities);

  static DiscreteDistribution uniform(Eigen::Index n);
  static DiscreteDistribution point_mass(Eigen::Index n, Eigen::Index at);

  const Eigen::VectorXd& probabilities() const { return p_; }
  Eigen::Index size() const { return p_.size(); }

 private:
  Eigen::VectorXd p_;
};

enum class EntropyMode { raw_bits, normalized };

double shannon_entropy(const DiscreteDistribution& d);

/// H(d) / log2(n); domain error for a single-outcome distribution.
double normalized_entropy(const DiscreteDistribution& d);

/// H(before) - H(after); negative when the product adds uncertainty.
double entropy_reduction(const DiscreteDistribution& before, const DiscreteDistribution& after,
                         EntropyMode mode = EntropyMode::raw_bits);

struct EntropyComparison {
  EntropyMode mode = EntropyMode::raw_bits;
  double before = 0.0;
  double after = 0.0;
  double reduction = 0.0;

  bool operator==(const EntropyComparison&) const = default;
};

EntropyComparison compare_entropy(const DiscreteDistribution& before,
                                  const DiscreteDistribution& after,
                                  EntropyMode mode = EntropyMode::raw_bits);

/// Parses "0.25,0.25,0.5" into a distribution.
DiscreteDistribution parse_distribution(std::string_view text);

}  // namespace aivalue
