#include "aivalue/entropy.hpp"

#include <charconv>
#include <sstream>
#include <string>

#include "aivalue/errors.hpp"

namespace aivalue {

namespace {

Eigen::VectorXd checked(Eigen::VectorXd p) {
  if (p.size() == 0) fail(ErrorKind::validation, "distribution is empty");
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i)) || p(i) < 0.0 || p(i) > 1.0) {
      std::ostringstream msg;
      msg << "probability[" << i << "] = " << p(i) << " outside [0, 1]";
      fail(ErrorKind::validation, msg.str());
    }
  }
  const double total = p.sum();
  if (std::abs(total - 1.0) > DiscreteDistribution::kSumTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "probabilities sum to " << total << ", not 1 within "
        << DiscreteDistribution::kSumTolerance;
    fail(ErrorKind::validation, msg.str());
  }
  if (total != 1.0) p /= total;
  return p;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::span<const double> probabilities)
    : p_(checked(Eigen::Map<const Eigen::VectorXd>(probabilities.data(),
                                                   static_cast<Eigen::Index>(probabilities.size())))) {}

DiscreteDistribution::DiscreteDistribution(const Eigen::Ref<const Eigen::VectorXd>& probabilities)
    : p_(checked(probabilities)) {}

DiscreteDistribution DiscreteDistribution::uniform(Eigen::Index n) {
  if (n < 1) fail(ErrorKind::validation, "uniform distribution needs n >= 1");
  return DiscreteDistribution(Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

DiscreteDistribution DiscreteDistribution::point_mass(Eigen::Index n, Eigen::Index at) {
  if (n < 1 || at < 0 || at >= n) fail(ErrorKind::validation, "point mass index out of range");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  p(at) = 1.0;
  return DiscreteDistribution(p);
}

double shannon_entropy(const DiscreteDistribution& d) { return entropy_bits(d.probabilities()); }

double normalized_entropy(const DiscreteDistribution& d) {
  if (d.size() < 2) {
    fail(ErrorKind::domain, "normalized entropy is undefined for a single-outcome distribution");
  }
  const double h = shannon_entropy(d) / std::log2(static_cast<double>(d.size()));
  return h > 1.0 ? 1.0 : h;
}

double entropy_reduction(const DiscreteDistribution& before, const DiscreteDistribution& after,
                         EntropyMode mode) {
  if (mode == EntropyMode::normalized) {
    return normalized_entropy(before) - normalized_entropy(after);
  }
  return shannon_entropy(before) - shannon_entropy(after);
}

EntropyComparison compare_entropy(const DiscreteDistribution& before,
                                  const DiscreteDistribution& after, EntropyMode mode) {
  EntropyComparison out;
  out.mode = mode;
  if (mode == EntropyMode::normalized) {
    out.before = normalized_entropy(before);
    out.after = normalized_entropy(after);
  } else {
    out.before = shannon_entropy(before);
    out.after = shannon_entropy(after);
  }
  out.reduction = out.before - out.after;
  return out;
}

DiscreteDistribution parse_distribution(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view token = text.substr(start, comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      fail(ErrorKind::validation, "cannot parse probability '" + std::string(token) + "'");
    }
    values.push_back(v);
    start = comma + 1;
  }
  return DiscreteDistribution(std::span<const double>(values));
}

}  // namespace aivalue
