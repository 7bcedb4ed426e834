#include "aivalue/model.hpp"

#include <cmath>
#include <sstream>

#include "aivalue/errors.hpp"

namespace aivalue {

namespace {

void require_range(const char* field, double value, double lo, double hi) {
  if (!std::isfinite(value)) {
    fail(ErrorKind::validation, std::string(field) + " must be finite");
  }
  if (value < lo || value > hi) {
    std::ostringstream msg;
    msg << field << " = " << value << " outside [" << lo << ", " << hi << "]";
    fail(ErrorKind::validation, msg.str());
  }
}

void require_nonnegative(const char* field, double value) {
  if (!std::isfinite(value)) {
    fail(ErrorKind::validation, std::string(field) + " must be finite");
  }
  if (value < 0.0) {
    std::ostringstream msg;
    msg << field << " = " << value << " must be >= 0";
    fail(ErrorKind::validation, msg.str());
  }
}

}  // namespace

void validate(const PositiveFactors& f) {
  require_range("entropy_reduction", f.entropy_reduction, 0.0, 1.0);
  require_range("efficiency_gain", f.efficiency_gain, 0.0, 1.0);
  require_range("cost_saving", f.cost_saving, 0.0, 1.0);
  require_range("decision_quality", f.decision_quality, 0.0, 5.0);
}

void validate(const RiskFactors& r) {
  require_range("error_probability", r.error_probability, 0.0, 1.0);
  require_range("error_impact", r.error_impact, 0.0, 10.0);
  require_nonnegative("correction_cost_ratio", r.correction_cost_ratio);
}

void validate(const WeightProfile& w) {
  require_nonnegative("alpha", w.alpha);
  require_nonnegative("beta", w.beta);
  require_nonnegative("gamma", w.gamma);
  require_nonnegative("delta", w.delta);
  require_nonnegative("lambda", w.lambda);
}

void validate(const VerdictThresholds& t) {
  if (!std::isfinite(t.reject_below) || !std::isfinite(t.proceed_above)) {
    fail(ErrorKind::configuration, "verdict thresholds must be finite");
  }
  if (t.reject_below > t.proceed_above) {
    std::ostringstream msg;
    msg << "reject threshold " << t.reject_below << " exceeds proceed threshold "
        << t.proceed_above;
    fail(ErrorKind::configuration, msg.str());
  }
}

double risk_magnitude(const RiskFactors& risks) {
  validate(risks);
  const double p = risks.error_probability;
  return p * p * risks.error_impact * (1.0 + risks.correction_cost_ratio);
}

double positive_sum(const PositiveFactors& f, const WeightProfile& w) {
  validate(f);
  validate(w);
  return w.alpha * f.entropy_reduction + w.beta * f.efficiency_gain + w.gamma * f.cost_saving +
         w.delta * f.decision_quality;
}

Verdict classify_verdict(double value, const VerdictThresholds& thresholds) {
  validate(thresholds);
  if (value > thresholds.proceed_above) return Verdict::proceed;
  if (value < thresholds.reject_below) return Verdict::reject;
  return Verdict::review;
}

ValueBreakdown composite_value(const PositiveFactors& f, const RiskFactors& r,
                               const WeightProfile& w, const VerdictThresholds& thresholds) {
  validate(f);
  validate(r);
  validate(w);

  ValueBreakdown out;
  out.contributions = {w.alpha * f.entropy_reduction, w.beta * f.efficiency_gain,
                       w.gamma * f.cost_saving, w.delta * f.decision_quality, 0.0};
  out.positive_sum =
      out.contributions[0] + out.contributions[1] + out.contributions[2] + out.contributions[3];
  out.risk_magnitude = risk_magnitude(r);
  out.risk_weight = w.lambda;
  out.contributions[4] = -(w.lambda * out.risk_magnitude);
  out.composite_value = out.positive_sum - w.lambda * out.risk_magnitude;
  out.verdict = classify_verdict(out.composite_value, thresholds);
  return out;
}

ValueBreakdown composite_from_components(double positive, double risk_f, double lambda,
                                         const VerdictThresholds& thresholds) {
  if (!std::isfinite(positive)) fail(ErrorKind::validation, "positive_sum must be finite");
  require_nonnegative("risk_f", risk_f);
  require_nonnegative("lambda", lambda);

  ValueBreakdown out;
  out.aggregated_positive = true;
  out.positive_sum = positive;
  out.risk_magnitude = risk_f;
  out.risk_weight = lambda;
  out.contributions = {positive, 0.0, 0.0, 0.0, -(lambda * risk_f)};
  out.composite_value = positive - lambda * risk_f;
  out.verdict = classify_verdict(out.composite_value, thresholds);
  return out;
}

ValueBreakdown evaluate(const CaseInputs& inputs, const WeightProfile& weights,
                        const VerdictThresholds& thresholds) {
  if (const auto* full = std::get_if<FactorInputs>(&inputs)) {
    return composite_value(full->factors, full->risks, weights, thresholds);
  }
  validate(weights);
  const auto& parts = std::get<ComponentInputs>(inputs);
  return composite_from_components(parts.positive_sum, parts.risk_f, weights.lambda, thresholds);
}

std::vector<TermShare> decompose(const ValueBreakdown& b) {
  const auto& c = b.contributions;
  const double positives = c[0] + c[1] + c[2] + c[3];
  const double total = positives + c[4];
  const double scale = 1.0 + std::abs(b.positive_sum) + std::abs(c[4]);

  if (b.risk_magnitude < 0.0 || !std::isfinite(b.composite_value)) {
    fail(ErrorKind::integrity, "breakdown has negative or non-finite risk/value");
  }
  if (std::abs(positives - b.positive_sum) > 1e-12 * scale ||
      std::abs(c[4] + b.risk_weight * b.risk_magnitude) > 1e-12 * scale ||
      std::abs(total - b.composite_value) > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "breakdown contributions sum to " << total << " but composite value is "
        << b.composite_value;
    fail(ErrorKind::integrity, msg.str());
  }

  double magnitude = 0.0;
  for (double v : c) magnitude += std::abs(v);

  std::vector<TermShare> rows;
  rows.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::string name(kTermNames[i]);
    if (b.aggregated_positive && i == 0) name = "positive_sum";
    if (b.aggregated_positive && i > 0 && i < 4) continue;  // unknown, not zero
    rows.push_back({std::move(name), c[i], magnitude > 0.0 ? std::abs(c[i]) / magnitude : 0.0});
  }
  return rows;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::proceed: return "proceed";
    case Verdict::review: return "review";
    case Verdict::reject: return "reject";
  }
  return "review";
}

Verdict verdict_from_string(std::string_view text) {
  if (text == "proceed") return Verdict::proceed;
  if (text == "review") return Verdict::review;
  if (text == "reject") return Verdict::reject;
  fail(ErrorKind::validation, "unknown verdict '" + std::string(text) + "'");
}

const char* to_string(WeightProvenance p) noexcept {
  switch (p) {
    case WeightProvenance::default_profile: return "default";
    case WeightProvenance::ahp: return "ahp";
    case WeightProvenance::manual: return "manual";
  }
  return "manual";
}

WeightProvenance provenance_from_string(std::string_view text) {
  if (text == "default") return WeightProvenance::default_profile;
  if (text == "ahp") return WeightProvenance::ahp;
  if (text == "manual") return WeightProvenance::manual;
  fail(ErrorKind::validation, "unknown weight provenance '" + std::string(text) + "'");
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::domain: return "domain";
    case ErrorKind::usage: return "usage";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::singular: return "singular";
    case ErrorKind::split: return "split";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::resource: return "resource";
    case ErrorKind::capability: return "capability";
    case ErrorKind::format: return "format";
    case ErrorKind::integrity: return "integrity";
  }
  return "error";
}

}  // namespace aivalue
