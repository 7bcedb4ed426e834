#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aivalue/model.hpp"

namespace aivalue {

enum class WeightName { alpha, beta, gamma, delta, lambda };

const char* to_string(WeightName name) noexcept;
WeightName weight_name_from_string(std::string_view text);
double& weight_ref(WeightProfile& weights, WeightName name);

/// Inclusive grid lo..hi with `steps` points; steps == 1 is the single value lo.
struct WeightRange {
  WeightName weight = WeightName::alpha;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 1;

  std::vector<double> values() const;
};

struct SweepCell {
  std::vector<double> assignment;  // one value per swept weight, in sweep order
  double value = 0.0;

  bool operator==(const SweepCell&) const = default;
};

/// Adjacent cells (differing in one swept weight by one grid step) whose V
/// values have different signs.
struct SignFlip {
  std::size_t from_cell = 0;
  std::size_t to_cell = 0;
  WeightName axis = WeightName::alpha;

  bool operator==(const SignFlip&) const = default;
};

struct SweepGrid {
  std::vector<WeightName> swept;
  std::vector<std::vector<double>> grids;
  std::vector<SweepCell> cells;  // row-major: the last swept weight varies fastest
  double v_min = 0.0;
  double v_max = 0.0;
  std::vector<SignFlip> sign_flip_boundaries;

  bool operator==(const SweepGrid&) const = default;
};

inline constexpr std::size_t kMaxSweepCells = 1'000'000;

/// Evaluates V over the Cartesian product of weight grids; weights not swept
/// keep their value from `base`. Component-only inputs can only sweep lambda.
SweepGrid weight_sweep(const CaseInputs& inputs, std::span<const WeightRange> ranges,
                       const WeightProfile& base = WeightProfile::defaults());

enum class RiskField { error_probability, error_impact, correction_cost_ratio };

const char* to_string(RiskField field) noexcept;
RiskField risk_field_from_string(std::string_view text);
double risk_value(const RiskFactors& risks, RiskField field);

struct PerturbationRow {
  double multiplier = 1.0;
  std::vector<double> factor_values;  // perturbed value of each target field
  double risk_f = 0.0;
  double value = 0.0;
  /// Relative change against the unperturbed case: (x_k - x_0) / |x_0|.
  /// Empty when the base is zero and the perturbed value is not.
  std::optional<double> pct_change_f;
  std::optional<double> pct_change_v;

  bool operator==(const PerturbationRow&) const = default;
};

struct PerturbationSeries {
  std::string factor_name;  // target fields joined with '+'
  std::vector<double> base_values;
  double base_f = 0.0;
  double base_v = 0.0;
  std::vector<double> multipliers;
  std::vector<PerturbationRow> rows;

  bool operator==(const PerturbationSeries&) const = default;
};

/// Scales every target risk field by each multiplier, all other inputs fixed.
/// Perturbed values must stay in the field's domain.
PerturbationSeries perturb_risk_factor(const FactorInputs& inputs, const WeightProfile& weights,
                                       std::span<const RiskField> targets,
                                       std::span<const double> multipliers);

struct BreakevenResult {
  std::optional<double> p_star;    // empty means saturated: V > 0 on all of [0, 1]
  double unconstrained_root = 0.0;  // sqrt(S / (lambda I (1 + C))), may exceed 1
  std::optional<double> residual;  // |V(p_star)|

  bool saturated() const { return !p_star.has_value(); }
  bool operator==(const BreakevenResult&) const = default;
};

/// Error probability at which V = 0 with everything else fixed.
BreakevenResult breakeven_probability(const FactorInputs& inputs, const WeightProfile& weights);

struct ScanRow {
  double probability = 0.0;
  double risk_f = 0.0;
  double value = 0.0;
  Verdict verdict = Verdict::review;

  bool operator==(const ScanRow&) const = default;
};

/// V and verdict along a strictly increasing grid of error probabilities.
std::vector<ScanRow> threshold_scan(const FactorInputs& inputs, const WeightProfile& weights,
                                    std::span<const double> probability_grid,
                                    const VerdictThresholds& thresholds = {});

}  // namespace aivalue
