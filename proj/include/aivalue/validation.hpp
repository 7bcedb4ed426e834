#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aivalue/dataset.hpp"
#include "aivalue/model.hpp"
#include "aivalue/sensitivity.hpp"
#include "aivalue/stats.hpp"

namespace aivalue {

struct CaseCheck {
  std::string id;
  CaseLabel label = CaseLabel::unlabeled;
  double stored_value = 0.0;
  double recomputed_value = 0.0;
  double abs_delta = 0.0;
  bool pass = false;

  bool operator==(const CaseCheck&) const = default;
};

/// A documented disagreement between published figures and the model's own
/// formulas, recomputed from the data at hand.
struct PublishedInconsistency {
  std::string key;
  std::string printed;
  std::string recomputed;
  std::string explanation;

  bool operator==(const PublishedInconsistency&) const = default;
};

struct H1Block {
  std::vector<std::string> factor_names;
  std::vector<CorrelationResult> factor_correlations;  // each factor vs V
  double best_single_r_squared = 0.0;
  double joint_r_squared = 0.0;
  double joint_adjusted_r_squared = 0.0;
  double interaction_beta = 0.0;  // standardized, centered four-way product
  double interaction_p = 1.0;
  bool supported = false;

  bool operator==(const H1Block&) const = default;
};

struct H2Block {
  CurveFitComparison curve;  // error probability vs risk-attributable value
  double perturbation_multiplier = 1.5;
  double max_scaling_error = 0.0;  // max |f(kp)/f(p) - k^2| / k^2 over cases
  bool perturbation_superlinear = false;
  bool supported = false;

  bool operator==(const H2Block&) const = default;
};

struct H3Block {
  ModerationReport moderation;
  bool supported = false;

  bool operator==(const H3Block&) const = default;
};

struct HypothesisReport {
  std::size_t observations = 0;
  double alpha = 0.05;
  H1Block h1;
  H2Block h2;
  H3Block h3;

  bool operator==(const HypothesisReport&) const = default;
};

struct HypothesisConfig {
  double alpha = 0.05;
  double moderation_threshold = 0.10;
  /// H3 also needs high beta / low beta <= 1 - min_attenuation_effect.
  double min_attenuation_effect = 0.10;
  double perturbation_multiplier = 1.5;
};

struct ValidationReport {
  std::string source;
  double tolerance = 0.0;
  std::vector<CaseCheck> per_case_checks;
  std::size_t passed = 0;
  bool sign_separation = false;
  std::optional<CorrelationResult> correlation;  // V vs market success over labeled rows
  std::optional<HypothesisReport> hypotheses;
  std::string hypothesis_note;
  std::vector<PublishedInconsistency> inconsistencies;

  bool all_pass() const { return passed == per_case_checks.size(); }
  bool operator==(const ValidationReport&) const = default;
};

/// Recomputes V for every row and compares it with the stored value. A row
/// passes when |delta| <= tolerance plus a few ulps of the operands, so a
/// zero tolerance means exact up to the binary representation of decimals.
ValidationReport validate_paper_tables(const Dataset& dataset,
                                       const WeightProfile& weights = WeightProfile::defaults(),
                                       double tolerance = 0.005);

/// The three documented inconsistencies of the published study.
std::vector<PublishedInconsistency> published_inconsistencies(const Dataset& dataset);

/// H1 (synergy), H2 (non-linear risk) and H3 (risk moderation) tests on
/// factor-level data. V is the stored value when present, else recomputed.
HypothesisReport run_hypothesis_suite(const Dataset& dataset,
                                      const WeightProfile& weights = WeightProfile::defaults(),
                                      const HypothesisConfig& config = {});

/// Regression of V on the positive sum, split on a risk field.
ModerationReport moderation_analysis(const Dataset& dataset, const WeightProfile& weights,
                                     RiskField moderator, double threshold);

struct SyntheticConfig {
  std::size_t cases = 200;
  std::uint64_t seed = 1;
  WeightProfile weights = WeightProfile::defaults();
  double noise_sigma = 0.05;
};

/// Population drawn from the value model: positive factors share a latent
/// product quality u ~ U(0, 1); p ~ U(0, 0.4), I ~ U(3, 10), C ~ U(0, 2);
/// value_v = V + N(0, sigma^2). Labels follow the sign of value_v.
Dataset synthetic_population(const SyntheticConfig& config);

struct BatchRow {
  std::string id;
  ValueBreakdown breakdown;

  bool operator==(const BatchRow&) const = default;
};

struct BatchReport {
  std::vector<BatchRow> rows;  // sorted by id
  std::size_t proceed = 0;
  std::size_t review = 0;
  std::size_t reject = 0;
  double mean_value = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;

  bool operator==(const BatchReport&) const = default;
};

BatchReport score_batch(const Dataset& dataset,
                        const WeightProfile& weights = WeightProfile::defaults(),
                        const VerdictThresholds& thresholds = {});

}  // namespace aivalue
