#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aivalue/ahp.hpp"
#include "aivalue/entropy.hpp"
#include "aivalue/model.hpp"
#include "aivalue/sensitivity.hpp"
#include "aivalue/stats.hpp"
#include "aivalue/validation.hpp"

namespace aivalue {

using ordered_json = nlohmann::ordered_json;

enum class ReportFormat { text, json, csv };

ReportFormat report_format_from_string(std::string_view text);

/// AHP output for the CLI: the raw result and, for five criteria, the profile.
struct AhpReport {
  AhpResult result;
  std::optional<WeightProfile> profile;
  std::string profile_note;

  bool operator==(const AhpReport&) const = default;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  bool operator==(const ScanReport&) const = default;
};

// Text output uses aligned columns and six significant digits; JSON keeps
// full precision with a fixed key order; CSV is one flat row per item.
std::string emit_report(const ValueBreakdown& breakdown, ReportFormat format);
std::string emit_report(const BatchReport& report, ReportFormat format);
std::string emit_report(const ValidationReport& report, ReportFormat format);
std::string emit_report(const HypothesisReport& report, ReportFormat format);  // no csv
std::string emit_report(const SweepGrid& grid, ReportFormat format);
std::string emit_report(const PerturbationSeries& series, ReportFormat format);
std::string emit_report(const BreakevenResult& result, ReportFormat format);
std::string emit_report(const ScanReport& report, ReportFormat format);
std::string emit_report(const AhpReport& report, ReportFormat format);
std::string emit_report(const EntropyComparison& comparison, ReportFormat format);

// JSON bindings (found by nlohmann through ADL). Non-finite numbers are
// written as the strings "inf", "-inf" and "nan".
void to_json(ordered_json& j, const WeightProfile& v);
void from_json(const ordered_json& j, WeightProfile& v);
void to_json(ordered_json& j, const ValueBreakdown& v);
void from_json(const ordered_json& j, ValueBreakdown& v);
void to_json(ordered_json& j, const BatchReport& v);
void from_json(const ordered_json& j, BatchReport& v);
void to_json(ordered_json& j, const CorrelationResult& v);
void from_json(const ordered_json& j, CorrelationResult& v);
void to_json(ordered_json& j, const CurveFitComparison& v);
void from_json(const ordered_json& j, CurveFitComparison& v);
void to_json(ordered_json& j, const ModerationReport& v);
void from_json(const ordered_json& j, ModerationReport& v);
void to_json(ordered_json& j, const HypothesisReport& v);
void from_json(const ordered_json& j, HypothesisReport& v);
void to_json(ordered_json& j, const ValidationReport& v);
void from_json(const ordered_json& j, ValidationReport& v);
void to_json(ordered_json& j, const SweepGrid& v);
void from_json(const ordered_json& j, SweepGrid& v);
void to_json(ordered_json& j, const PerturbationSeries& v);
void from_json(const ordered_json& j, PerturbationSeries& v);
void to_json(ordered_json& j, const BreakevenResult& v);
void from_json(const ordered_json& j, BreakevenResult& v);
void to_json(ordered_json& j, const ScanReport& v);
void from_json(const ordered_json& j, ScanReport& v);
void to_json(ordered_json& j, const AhpReport& v);
void from_json(const ordered_json& j, AhpReport& v);
void to_json(ordered_json& j, const EntropyComparison& v);
void from_json(const ordered_json& j, EntropyComparison& v);

}  // namespace aivalue
