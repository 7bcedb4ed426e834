#include <doctest.h>

#include <cmath>

#include "aivalue/errors.hpp"
#include "aivalue/model.hpp"
#include "test_support.hpp"

using namespace aivalue;

namespace {

FactorInputs random_inputs(testing::Rng& rng) {
  return {{rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform(0, 5)},
          {rng.uniform(), rng.uniform(0, 10), rng.uniform(0, 10)}};
}

}  // namespace

TEST_CASE("risk magnitude examples") {
  CHECK(risk_magnitude({0.0, 7.5, 3.0}) == 0.0);
  CHECK(risk_magnitude({1.0, 1.0, 0.0}) == 1.0);
  CHECK(risk_magnitude({0.2, 6.3, 7.23}) == doctest::Approx(2.07396).epsilon(1e-13));
}

TEST_CASE("positive sum examples") {
  const auto w = WeightProfile::defaults();
  CHECK(positive_sum({}, w) == 0.0);
  CHECK(positive_sum({1, 1, 1, 5}, w) == doctest::Approx(2.8).epsilon(1e-15));
  CHECK(positive_sum({0.5, 0, 0, 0}, w) == 0.5);
}

TEST_CASE("composite value of the worked example") {
  const auto b = composite_value({0.7, 0.45, 0.3, 0.0}, {0.12, 6.0, 0.2});
  CHECK(b.positive_sum == doctest::Approx(1.015).epsilon(1e-14));
  CHECK(b.risk_magnitude == doctest::Approx(0.10368).epsilon(1e-14));
  CHECK(b.composite_value == doctest::Approx(0.91132).epsilon(1e-14));
  CHECK(b.verdict == Verdict::proceed);

  const auto terms = decompose(b);
  REQUIRE(terms.size() == 5);
  CHECK(terms[0].contribution == doctest::Approx(0.7));
  CHECK(terms[1].contribution == doctest::Approx(0.225));
  CHECK(terms[2].contribution == doctest::Approx(0.09));
  CHECK(terms[3].contribution == 0.0);
  CHECK(terms[4].name == "risk");
  CHECK(terms[4].contribution == doctest::Approx(-0.10368));
}

TEST_CASE("zero case is a review") {
  const auto b = composite_value({}, {});
  CHECK(b.composite_value == 0.0);
  CHECK(b.verdict == Verdict::review);
}

TEST_CASE("component inputs reproduce a published row") {
  const auto b = composite_from_components(1.86, 0.32, 1.0);
  CHECK(b.composite_value == 1.54);
  CHECK(b.aggregated_positive);
  const auto terms = decompose(b);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].name == "positive_sum");
  CHECK(terms[0].contribution == 1.86);
  CHECK(terms[1].contribution == -0.32);
}

TEST_CASE("single term takes the whole share") {
  const auto terms = decompose(composite_value({0.4, 0, 0, 0}, {}));
  CHECK(terms[0].share == 1.0);
  for (std::size_t i = 1; i < terms.size(); ++i) CHECK(terms[i].share == 0.0);
}

TEST_CASE("verdicts") {
  CHECK(classify_verdict(1.54) == Verdict::proceed);
  CHECK(classify_verdict(0.0) == Verdict::review);
  CHECK(classify_verdict(-2.39) == Verdict::reject);
  CHECK(classify_verdict(0.5, {-1.0, 1.0}) == Verdict::review);
  CHECK_THROWS_AS(validate(VerdictThresholds{1.0, -1.0}), Error);
}

TEST_CASE("out-of-domain inputs are rejected, not clamped") {
  CHECK_THROWS_WITH_AS(validate(RiskFactors{1.5, 1, 0}), doctest::Contains("error_probability"),
                       Error);
  CHECK_THROWS_AS(validate(RiskFactors{0.5, 11, 0}), Error);
  CHECK_THROWS_AS(validate(RiskFactors{0.5, 1, -0.1}), Error);
  CHECK_THROWS_AS(validate(PositiveFactors{0, 0, 0, 5.5}), Error);
  CHECK_THROWS_AS(validate(PositiveFactors{1.2, 0, 0, 0}), Error);
  CHECK_THROWS_AS(validate(PositiveFactors{NAN, 0, 0, 0}), Error);
  CHECK_THROWS_AS(composite_value({0, 0, 0, 0}, {2.0, 1, 0}), Error);
  try {
    validate(RiskFactors{-0.1, 1, 0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
  }
}

TEST_CASE("string conversions round-trip") {
  for (auto v : {Verdict::proceed, Verdict::review, Verdict::reject}) {
    CHECK(verdict_from_string(to_string(v)) == v);
  }
  for (auto p : {WeightProvenance::default_profile, WeightProvenance::ahp, WeightProvenance::manual}) {
    CHECK(provenance_from_string(to_string(p)) == p);
  }
  CHECK_THROWS_AS(verdict_from_string("maybe"), Error);
}

TEST_CASE("property: risk scales with the square of the probability") {
  testing::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const RiskFactors r{rng.uniform(0.001, 1.0), rng.uniform(0, 10), rng.uniform(0, 10)};
    const double k = rng.uniform(0, 1.0 / r.error_probability);
    const double f = risk_magnitude(r);
    const double scaled = risk_magnitude({k * r.error_probability, r.error_impact, r.correction_cost_ratio});
    CHECK(std::abs(scaled - k * k * f) <= 1e-12 * std::max(k * k * f, 1e-300));
  }
}

TEST_CASE("property: monotone risk, strictly decreasing value in p") {
  testing::Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    auto in = random_inputs(rng);
    in.risks.error_probability = rng.uniform(0.01, 0.9);
    in.risks.error_impact = rng.uniform(0.1, 10);
    auto up = in;
    up.risks.error_probability += 0.05;
    CHECK(risk_magnitude(up.risks) >= risk_magnitude(in.risks));
    CHECK(composite_value(up.factors, up.risks).composite_value <
          composite_value(in.factors, in.risks).composite_value);
    auto more_impact = in;
    more_impact.risks.error_impact = std::min(10.0, in.risks.error_impact + 0.5);
    CHECK(risk_magnitude(more_impact.risks) >= risk_magnitude(in.risks));
    auto more_cost = in;
    more_cost.risks.correction_cost_ratio += 0.5;
    CHECK(risk_magnitude(more_cost.risks) >= risk_magnitude(in.risks));
  }
}

TEST_CASE("property: value is affine in each positive factor with the weight as slope") {
  testing::Rng rng(13);
  const auto w = WeightProfile::defaults();
  const double weights[] = {w.alpha, w.beta, w.gamma, w.delta};
  for (int i = 0; i < 200; ++i) {
    auto in = random_inputs(rng);
    in.factors.entropy_reduction = rng.uniform(0, 0.9);
    in.factors.efficiency_gain = rng.uniform(0, 0.9);
    in.factors.cost_saving = rng.uniform(0, 0.9);
    in.factors.decision_quality = rng.uniform(0, 4.9);
    const double v0 = composite_value(in.factors, in.risks).composite_value;
    for (int term = 0; term < 4; ++term) {
      auto moved = in.factors;
      double* field[] = {&moved.entropy_reduction, &moved.efficiency_gain, &moved.cost_saving,
                         &moved.decision_quality};
      const double h = 0.0625;
      *field[term] += h;
      const double slope = (composite_value(moved, in.risks).composite_value - v0) / h;
      CHECK(std::abs(slope - weights[term]) <= 1e-10);
    }
  }
}

TEST_CASE("property: contributions add up to V") {
  testing::Rng rng(14);
  for (int i = 0; i < 1000; ++i) {
    const auto in = random_inputs(rng);
    const auto b = composite_value(in.factors, in.risks);
    double sum = 0.0;
    for (double c : b.contributions) sum += c;
    CHECK(std::abs(sum - b.composite_value) <= 1e-12 * std::max(1.0, std::abs(b.composite_value)));
    CHECK_NOTHROW(decompose(b));
  }
}

TEST_CASE("property: scaling all weights scales V and keeps the verdict") {
  testing::Rng rng(15);
  for (int i = 0; i < 300; ++i) {
    const auto in = random_inputs(rng);
    const double k = rng.uniform(0.1, 10);
    auto w = WeightProfile::defaults();
    w.alpha *= k;
    w.beta *= k;
    w.gamma *= k;
    w.delta *= k;
    w.lambda *= k;
    const auto base = composite_value(in.factors, in.risks);
    const auto scaled = composite_value(in.factors, in.risks, w);
    CHECK(scaled.composite_value == doctest::Approx(k * base.composite_value).epsilon(1e-12));
    CHECK(scaled.verdict == base.verdict);
  }
}

TEST_CASE("tampered breakdown fails the integrity check") {
  auto b = composite_value({0.7, 0.45, 0.3, 0.0}, {0.12, 6.0, 0.2});
  b.composite_value += 0.01;
  CHECK_THROWS_AS(decompose(b), Error);
}
