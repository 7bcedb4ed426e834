#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aivalue {

/// Positive value drivers of a product, in canonical units.
///
/// entropy_reduction, efficiency_gain and cost_saving live in [0, 1]
/// (cost saving is currency savings over a declared reference budget);
/// decision_quality stays on its native 5-point Likert scale [0, 5].
struct PositiveFactors {
  double entropy_reduction = 0.0;
  double efficiency_gain = 0.0;
  double cost_saving = 0.0;
  double decision_quality = 0.0;

  bool operator==(const PositiveFactors&) const = default;
};

/// Risk drivers: probability in [0, 1], impact severity in [0, 10],
/// correction cost as a nonnegative ratio to the reference budget.
struct RiskFactors {
  double error_probability = 0.0;
  double error_impact = 0.0;
  double correction_cost_ratio = 0.0;

  bool operator==(const RiskFactors&) const = default;
};

enum class WeightProvenance { default_profile, ahp, manual };

struct WeightProfile {
  double alpha = 1.0;   // entropy reduction
  double beta = 0.5;    // efficiency
  double gamma = 0.3;   // cost saving
  double delta = 0.2;   // decision quality
  double lambda = 1.0;  // risk
  WeightProvenance provenance = WeightProvenance::default_profile;

  static WeightProfile defaults() { return {}; }

  bool operator==(const WeightProfile&) const = default;
};

enum class Verdict { proceed, review, reject };

/// Verdict cut points; v > proceed_above proceeds, v < reject_below rejects.
struct VerdictThresholds {
  double reject_below = 0.0;
  double proceed_above = 0.0;
};

/// Names of the five signed terms of the composite value, in output order.
inline constexpr std::array<std::string_view, 5> kTermNames = {
    "entropy_reduction", "efficiency_gain", "cost_saving", "decision_quality", "risk"};

struct ValueBreakdown {
  double positive_sum = 0.0;
  double risk_magnitude = 0.0;  // unweighted f
  double risk_weight = 1.0;     // lambda used for the risk contribution
  double composite_value = 0.0;
  /// Signed contributions keyed by kTermNames; the last entry is -lambda * f.
  std::array<double, 5> contributions{};
  Verdict verdict = Verdict::review;
  /// Set when only the aggregated positive sum is known; it is then booked
  /// entirely in contributions[0].
  bool aggregated_positive = false;

  bool operator==(const ValueBreakdown&) const = default;
};

struct TermShare {
  std::string name;
  double contribution = 0.0;
  double share = 0.0;  // |contribution| / sum of |contributions|
};

/// Full factor-level description of a product.
struct FactorInputs {
  PositiveFactors factors;
  RiskFactors risks;

  bool operator==(const FactorInputs&) const = default;
};

/// Aggregates only: the weighted positive sum and the unweighted risk f.
/// Used for published tables that omit the raw factors.
struct ComponentInputs {
  double positive_sum = 0.0;
  double risk_f = 0.0;

  bool operator==(const ComponentInputs&) const = default;
};

using CaseInputs = std::variant<FactorInputs, ComponentInputs>;

void validate(const PositiveFactors& factors);
void validate(const RiskFactors& risks);
void validate(const WeightProfile& weights);
void validate(const VerdictThresholds& thresholds);

/// f = p^2 * I * (1 + C).
double risk_magnitude(const RiskFactors& risks);

double positive_sum(const PositiveFactors& factors, const WeightProfile& weights);

Verdict classify_verdict(double value, const VerdictThresholds& thresholds = {});

ValueBreakdown composite_value(const PositiveFactors& factors, const RiskFactors& risks,
                               const WeightProfile& weights = WeightProfile::defaults(),
                               const VerdictThresholds& thresholds = {});

/// Breakdown for records that only publish the aggregated positive sum and f.
ValueBreakdown composite_from_components(double positive_sum, double risk_f, double lambda,
                                         const VerdictThresholds& thresholds = {});

/// Dispatches to composite_value or composite_from_components. For component
/// inputs only lambda of `weights` is used.
ValueBreakdown evaluate(const CaseInputs& inputs,
                        const WeightProfile& weights = WeightProfile::defaults(),
                        const VerdictThresholds& thresholds = {});

/// Ordered (term, signed contribution, share) rows. Throws an integrity error
/// when the breakdown's parts do not add up.
std::vector<TermShare> decompose(const ValueBreakdown& breakdown);

const char* to_string(Verdict verdict) noexcept;
Verdict verdict_from_string(std::string_view text);
const char* to_string(WeightProvenance provenance) noexcept;
WeightProvenance provenance_from_string(std::string_view text);

}  // namespace aivalue
