#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "aivalue/entropy.hpp"
#include "aivalue/errors.hpp"
#include "test_support.hpp"

using namespace aivalue;

namespace {

DiscreteDistribution dist(std::vector<double> p) { return DiscreteDistribution(std::span<const double>(p)); }

std::vector<double> random_probabilities(testing::Rng& rng, int n) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    // Occasional exact zeros exercise the 0 log 0 convention.
    x = rng.uniform() < 0.1 ? 0.0 : rng.uniform();
    total += x;
  }
  if (total == 0.0) {
    p[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace

TEST_CASE("entropy examples") {
  CHECK(shannon_entropy(DiscreteDistribution::uniform(2)) == 1.0);
  CHECK(shannon_entropy(DiscreteDistribution::uniform(4)) == 2.0);
  CHECK(shannon_entropy(dist({1, 0, 0})) == 0.0);
  CHECK(shannon_entropy(dist({0.5, 0.25, 0.25})) == 1.5);
}

TEST_CASE("normalized entropy examples") {
  CHECK(normalized_entropy(DiscreteDistribution::uniform(8)) == 1.0);
  CHECK(normalized_entropy(DiscreteDistribution::point_mass(4, 2)) == 0.0);
  CHECK(normalized_entropy(dist({0.5, 0.25, 0.25})) == doctest::Approx(1.5 / std::log2(3.0)).epsilon(1e-15));
  CHECK(normalized_entropy(dist({0.5, 0.25, 0.25})) == doctest::Approx(0.94639).epsilon(1e-5));
  CHECK_THROWS_AS(normalized_entropy(dist({1.0})), Error);
}

TEST_CASE("entropy reduction examples") {
  const auto u4 = DiscreteDistribution::uniform(4);
  CHECK(entropy_reduction(u4, u4) == 0.0);
  CHECK(entropy_reduction(u4, DiscreteDistribution::point_mass(4, 0)) == 2.0);
  CHECK(entropy_reduction(u4, dist({0.7, 0.1, 0.1, 0.1})) == doctest::Approx(0.64322).epsilon(1e-5));
  // Entropy-increasing products are reported as negative reductions.
  CHECK(entropy_reduction(DiscreteDistribution::point_mass(4, 0), u4) == -2.0);
  const auto c = compare_entropy(u4, DiscreteDistribution::point_mass(4, 1), EntropyMode::normalized);
  CHECK(c.before == 1.0);
  CHECK(c.after == 0.0);
  CHECK(c.reduction == 1.0);
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(dist({}), Error);
  CHECK_THROWS_AS(dist({0.5, 0.6}), Error);
  CHECK_THROWS_AS(dist({-0.1, 1.1}), Error);
  CHECK_THROWS_AS(dist({0.5, NAN}), Error);
  CHECK_NOTHROW(dist({0.5, 0.5 + 5e-10}));
  CHECK(dist({0.5, 0.5 + 5e-10}).probabilities().sum() == doctest::Approx(1.0).epsilon(1e-16));
  CHECK_THROWS_AS(DiscreteDistribution::point_mass(3, 3), Error);
}

TEST_CASE("distribution literals") {
  const auto d = parse_distribution("0.25, 0.25,0.5");
  REQUIRE(d.size() == 3);
  CHECK(d.probabilities()(2) == 0.5);
  CHECK_THROWS_AS(parse_distribution("0.5,abc"), Error);
  CHECK_THROWS_AS(parse_distribution(""), Error);
}

TEST_CASE("entropy kernel works on fixed-size and float vectors") {
  CHECK(entropy_bits(Eigen::Vector4d::Constant(0.25)) == 2.0);
  CHECK(entropy_bits(Eigen::Vector2f(0.5f, 0.5f)) == 1.0f);
}

TEST_CASE("property: entropy bounds over random distributions") {
  testing::Rng rng(21);
  for (int i = 0; i < 10000; ++i) {
    const int n = rng.integer(1, 32);
    const auto d = dist(random_probabilities(rng, n));
    const double h = shannon_entropy(d);
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(n)));
  }
}

TEST_CASE("property: permutation invariance and antisymmetry") {
  testing::Rng rng(22);
  for (int i = 0; i < 500; ++i) {
    const int n = rng.integer(2, 12);
    auto p = random_probabilities(rng, n);
    auto q = p;
    std::reverse(q.begin(), q.end());
    std::rotate(q.begin(), q.begin() + 1, q.end());
    CHECK(shannon_entropy(dist(p)) == doctest::Approx(shannon_entropy(dist(q))).epsilon(1e-14));
    const auto a = dist(random_probabilities(rng, n));
    const auto b = dist(random_probabilities(rng, n));
    CHECK(entropy_reduction(a, b) == -entropy_reduction(b, a));
  }
}

TEST_CASE("property: normalized entropy of a uniform distribution is one") {
  for (int n = 2; n <= 64; ++n) {
    CHECK(normalized_entropy(DiscreteDistribution::uniform(n)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(normalized_entropy(DiscreteDistribution::uniform(n)) <= 1.0);
  }
}
