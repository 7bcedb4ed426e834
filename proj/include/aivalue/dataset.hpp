#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aivalue/ahp.hpp"
#include "aivalue/model.hpp"

namespace aivalue {

enum class CaseLabel { success, failure, unlabeled };

const char* to_string(CaseLabel label) noexcept;
CaseLabel label_from_string(std::string_view text);

/// One assessed product. Factor-level records carry the raw inputs; records
/// transcribed from published summary tables carry only the component sums.
struct CaseRecord {
  std::string id;
  CaseLabel label = CaseLabel::unlabeled;
  CaseInputs inputs = FactorInputs{};
  std::optional<double> market_success_rate;
  /// Published or observed V. Required for component rows in validation; on
  /// factor rows it holds an externally observed value (e.g. with noise).
  std::optional<double> stored_value;
  std::string notes;

  bool components_only() const { return std::holds_alternative<ComponentInputs>(inputs); }
  bool operator==(const CaseRecord&) const = default;
};

/// Per-variable descriptive statistics over the whole sample and per label group.
struct AggregateStat {
  std::string variable;
  std::string unit;
  double mean = 0.0;
  double sd = 0.0;
  double success_mean = 0.0;
  double failure_mean = 0.0;

  bool operator==(const AggregateStat&) const = default;
};

struct Dataset {
  std::string source;
  std::vector<CaseRecord> cases;
  std::optional<std::vector<AggregateStat>> aggregates;

  const CaseRecord& find(std::string_view id) const;  // usage error when absent
  bool operator==(const Dataset&) const = default;
};

enum class DataFormat { csv, json };

/// Checks every record invariant and id uniqueness.
void validate(const CaseRecord& record);
void validate(const Dataset& dataset);

/// Parses and validates a dataset. Columns (or JSON keys) ending in `_pct`
/// are percentages and are divided by 100. Schema violations raise
/// validation errors naming the row and column.
Dataset load_cases(std::istream& in, DataFormat format, std::string source = {});
Dataset load_cases(std::string_view text, DataFormat format, std::string source = {});
/// Format from the extension: .json is JSON, anything else CSV.
Dataset load_cases_file(const std::filesystem::path& path);

/// Serializes a dataset; load_cases on the result reproduces it. CSV holds a
/// single record grade and drops source/aggregates.
std::string emit_dataset(const Dataset& dataset, DataFormat format);

/// The published ten-case table (component sums only) plus its group aggregates.
Dataset bundled_paper_dataset();

/// n x n comma-separated matrix; entries may be decimals or fractions "1/3".
PairwiseMatrix load_pairwise_matrix(std::istream& in);
PairwiseMatrix load_pairwise_matrix_file(const std::filesystem::path& path);

/// JSON weight document {"alpha":..,"beta":..,"gamma":..,"delta":..,"lambda":..}
/// with optional "provenance"; absent weights take the defaults.
WeightProfile load_weights(std::string_view json_text);
WeightProfile load_weights_file(const std::filesystem::path& path);
std::string emit_weights(const WeightProfile& weights);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace aivalue
