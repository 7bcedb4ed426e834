#include "aivalue/sensitivity.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "aivalue/errors.hpp"

namespace aivalue {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double& risk_ref(RiskFactors& risks, RiskField field) {
  switch (field) {
    case RiskField::error_probability: return risks.error_probability;
    case RiskField::error_impact: return risks.error_impact;
    case RiskField::correction_cost_ratio: return risks.correction_cost_ratio;
  }
  return risks.error_probability;
}

std::optional<double> relative_change(double base, double value) {
  if (base == 0.0) {
    if (value == 0.0) return 0.0;
    return std::nullopt;
  }
  return (value - base) / std::abs(base);
}

}  // namespace

const char* to_string(WeightName name) noexcept {
  switch (name) {
    case WeightName::alpha: return "alpha";
    case WeightName::beta: return "beta";
    case WeightName::gamma: return "gamma";
    case WeightName::delta: return "delta";
    case WeightName::lambda: return "lambda";
  }
  return "alpha";
}

WeightName weight_name_from_string(std::string_view text) {
  for (WeightName w : {WeightName::alpha, WeightName::beta, WeightName::gamma, WeightName::delta,
                       WeightName::lambda}) {
    if (text == to_string(w)) return w;
  }
  fail(ErrorKind::usage, "unknown weight '" + std::string(text) + "'");
}

double& weight_ref(WeightProfile& w, WeightName name) {
  switch (name) {
    case WeightName::alpha: return w.alpha;
    case WeightName::beta: return w.beta;
    case WeightName::gamma: return w.gamma;
    case WeightName::delta: return w.delta;
    case WeightName::lambda: return w.lambda;
  }
  return w.alpha;
}

std::vector<double> WeightRange::values() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    std::ostringstream msg;
    msg << "weight range for " << to_string(weight) << " needs finite lo <= hi (got " << lo
        << ", " << hi << ")";
    fail(ErrorKind::usage, msg.str());
  }
  if (lo < 0.0) fail(ErrorKind::usage, std::string("weight ") + to_string(weight) + " cannot be negative");
  if (steps < 1) fail(ErrorKind::usage, "weight range needs steps >= 1");
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  if (steps > 1) out.back() = hi;
  return out;
}

SweepGrid weight_sweep(const CaseInputs& inputs, std::span<const WeightRange> ranges,
                       const WeightProfile& base) {
  validate(base);
  const bool components_only = std::holds_alternative<ComponentInputs>(inputs);

  SweepGrid grid;
  std::set<WeightName> seen;
  std::size_t total = 1;
  for (const auto& range : ranges) {
    if (!seen.insert(range.weight).second) {
      fail(ErrorKind::usage, std::string("weight ") + to_string(range.weight) + " swept twice");
    }
    if (components_only && range.weight != WeightName::lambda) {
      fail(ErrorKind::capability, std::string("cannot sweep ") + to_string(range.weight) +
                                      " on a components-only case; only lambda applies");
    }
    grid.swept.push_back(range.weight);
    grid.grids.push_back(range.values());
    if (range.steps > kMaxSweepCells / total) {
      std::ostringstream msg;
      msg << "sweep exceeds the " << kMaxSweepCells << " cell budget";
      fail(ErrorKind::resource, msg.str());
    }
    total *= range.steps;
  }

  const std::size_t axes = grid.swept.size();
  // stride[a] = number of cells per step along axis a
  std::vector<std::size_t> stride(axes, 1);
  for (std::size_t a = axes; a-- > 1;) stride[a - 1] = stride[a] * grid.grids[a].size();

  grid.cells.reserve(total);
  for (std::size_t cell = 0; cell < total; ++cell) {
    WeightProfile w = base;
    SweepCell out;
    out.assignment.reserve(axes);
    for (std::size_t a = 0; a < axes; ++a) {
      const double value = grid.grids[a][(cell / stride[a]) % grid.grids[a].size()];
      weight_ref(w, grid.swept[a]) = value;
      out.assignment.push_back(value);
    }
    out.value = evaluate(inputs, w).composite_value;
    grid.cells.push_back(std::move(out));
  }

  grid.v_min = grid.cells.front().value;
  grid.v_max = grid.cells.front().value;
  for (std::size_t cell = 0; cell < total; ++cell) {
    const double v = grid.cells[cell].value;
    grid.v_min = std::min(grid.v_min, v);
    grid.v_max = std::max(grid.v_max, v);
    for (std::size_t a = 0; a < axes; ++a) {
      const std::size_t position = (cell / stride[a]) % grid.grids[a].size();
      if (position + 1 >= grid.grids[a].size()) continue;
      const std::size_t next = cell + stride[a];
      if (sign_of(v) != sign_of(grid.cells[next].value)) {
        grid.sign_flip_boundaries.push_back({cell, next, grid.swept[a]});
      }
    }
  }
  return grid;
}

const char* to_string(RiskField field) noexcept {
  switch (field) {
    case RiskField::error_probability: return "error_probability";
    case RiskField::error_impact: return "error_impact";
    case RiskField::correction_cost_ratio: return "correction_cost_ratio";
  }
  return "error_probability";
}

RiskField risk_field_from_string(std::string_view text) {
  for (RiskField f : {RiskField::error_probability, RiskField::error_impact,
                      RiskField::correction_cost_ratio}) {
    if (text == to_string(f)) return f;
  }
  fail(ErrorKind::usage, "unknown risk field '" + std::string(text) + "'");
}

double risk_value(const RiskFactors& risks, RiskField field) {
  RiskFactors copy = risks;
  return risk_ref(copy, field);
}

PerturbationSeries perturb_risk_factor(const FactorInputs& inputs, const WeightProfile& weights,
                                       std::span<const RiskField> targets,
                                       std::span<const double> multipliers) {
  if (targets.empty()) fail(ErrorKind::usage, "perturbation needs at least one target field");
  std::set<RiskField> unique(targets.begin(), targets.end());
  if (unique.size() != targets.size()) fail(ErrorKind::usage, "perturbation target repeated");

  const ValueBreakdown base = composite_value(inputs.factors, inputs.risks, weights);
  PerturbationSeries series;
  for (RiskField t : targets) {
    series.factor_name += (series.factor_name.empty() ? "" : "+") + std::string(to_string(t));
    series.base_values.push_back(risk_value(inputs.risks, t));
  }
  series.base_f = base.risk_magnitude;
  series.base_v = base.composite_value;
  series.multipliers.assign(multipliers.begin(), multipliers.end());

  for (double k : multipliers) {
    if (!std::isfinite(k) || k < 0.0) {
      std::ostringstream msg;
      msg << "multiplier " << k << " must be finite and >= 0";
      fail(ErrorKind::usage, msg.str());
    }
    RiskFactors risks = inputs.risks;
    PerturbationRow row;
    row.multiplier = k;
    for (RiskField t : targets) {
      double& field = risk_ref(risks, t);
      field *= k;
      row.factor_values.push_back(field);
    }
    try {
      validate(risks);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "multiplier " << k << " leaves the domain: " << e.what();
      fail(ErrorKind::domain, msg.str());
    }
    const ValueBreakdown b = composite_value(inputs.factors, risks, weights);
    row.risk_f = b.risk_magnitude;
    row.value = b.composite_value;
    row.pct_change_f = relative_change(base.risk_magnitude, row.risk_f);
    row.pct_change_v = relative_change(base.composite_value, row.value);
    series.rows.push_back(std::move(row));
  }
  return series;
}

BreakevenResult breakeven_probability(const FactorInputs& inputs, const WeightProfile& weights) {
  const double s = positive_sum(inputs.factors, weights);
  validate(inputs.risks);
  const double slope =
      weights.lambda * inputs.risks.error_impact * (1.0 + inputs.risks.correction_cost_ratio);
  if (!(slope > 0.0)) {
    fail(ErrorKind::domain, "break-even undefined: lambda * I * (1 + C) = 0, V has no risk sensitivity");
  }

  BreakevenResult out;
  out.unconstrained_root = std::sqrt(s / slope);
  if (out.unconstrained_root > 1.0) return out;

  out.p_star = out.unconstrained_root;
  RiskFactors at_root = inputs.risks;
  at_root.error_probability = *out.p_star;
  out.residual = std::abs(composite_value(inputs.factors, at_root, weights).composite_value);
  return out;
}

std::vector<ScanRow> threshold_scan(const FactorInputs& inputs, const WeightProfile& weights,
                                    std::span<const double> grid,
                                    const VerdictThresholds& thresholds) {
  if (grid.empty()) fail(ErrorKind::usage, "threshold scan needs a non-empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
      std::ostringstream msg;
      msg << "grid value " << grid[i] << " outside [0, 1]";
      fail(ErrorKind::usage, msg.str());
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      fail(ErrorKind::usage, "threshold scan grid must be strictly increasing");
    }
  }
  validate(thresholds);

  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    RiskFactors risks = inputs.risks;
    risks.error_probability = p;
    const ValueBreakdown b = composite_value(inputs.factors, risks, weights, thresholds);
    rows.push_back({p, b.risk_magnitude, b.composite_value, b.verdict});
  }
  return rows;
}

}  // namespace aivalue
