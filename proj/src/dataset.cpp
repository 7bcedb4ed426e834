#include "aivalue/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aivalue/errors.hpp"
#include "aivalue/format.hpp"

namespace aivalue {

using ordered_json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kFactorColumns = {
    "id",           "label",          "entropy_reduction",    "efficiency_gain",
    "cost_saving",  "decision_quality", "error_probability", "error_impact",
    "correction_cost_ratio", "market_success_rate"};
const std::vector<std::string> kComponentColumns = {"id",      "label",   "positive_sum",
                                                    "risk_f",  "value_v", "market_success_rate"};
// Columns that may be absent from a factor-level file.
const std::set<std::string> kOptionalColumns = {"market_success_rate", "value_v", "notes"};
const std::set<std::string> kNumericColumns = {
    "entropy_reduction", "efficiency_gain", "cost_saving",          "decision_quality",
    "error_probability", "error_impact",    "correction_cost_ratio", "market_success_rate",
    "positive_sum",      "risk_f",          "value_v"};

[[noreturn]] void schema_error(std::size_t row, const std::string& column, const std::string& what) {
  std::ostringstream msg;
  msg << "row " << row;
  if (!column.empty()) msg << ", column " << column;
  msg << ": " << what;
  fail(ErrorKind::validation, msg.str());
}

double parse_number(std::string_view text, std::size_t row, const std::string& column) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    schema_error(row, column, "'" + std::string(text) + "' is not a finite number");
  }
  return v;
}

// A raw record: canonical column name -> value; percent columns already converted.
struct RawRecord {
  std::size_t row = 0;
  std::map<std::string, double> numbers;
  std::map<std::string, std::string> strings;
};

void put_value(RawRecord& rec, const std::string& key, double value) {
  std::string name = key;
  if (name.size() > 4 && name.ends_with("_pct")) {
    name.resize(name.size() - 4);
    if (!kNumericColumns.contains(name)) schema_error(rec.row, key, "unknown percent column");
    value /= 100.0;
  } else if (!kNumericColumns.contains(name)) {
    schema_error(rec.row, key, "unknown column");
  }
  if (!rec.numbers.emplace(name, value).second) schema_error(rec.row, key, "column given twice");
}

std::string canonical_name(const std::string& key) {
  if (key.size() > 4 && key.ends_with("_pct")) return key.substr(0, key.size() - 4);
  return key;
}

CaseRecord build_record(const RawRecord& raw) {
  CaseRecord rec;
  const auto string_field = [&](const std::string& name) -> std::string {
    const auto it = raw.strings.find(name);
    return it == raw.strings.end() ? std::string() : it->second;
  };
  const auto number = [&](const std::string& name) -> std::optional<double> {
    const auto it = raw.numbers.find(name);
    if (it == raw.numbers.end()) return std::nullopt;
    return it->second;
  };
  const auto required = [&](const std::string& name) {
    const auto v = number(name);
    if (!v) schema_error(raw.row, name, "required value missing");
    return *v;
  };

  rec.id = string_field("id");
  if (rec.id.empty()) schema_error(raw.row, "id", "id must be non-empty");
  try {
    rec.label = label_from_string(string_field("label"));
  } catch (const Error& e) {
    schema_error(raw.row, "label", e.what());
  }
  rec.notes = string_field("notes");
  rec.market_success_rate = number("market_success_rate");
  rec.stored_value = number("value_v");

  if (raw.numbers.contains("positive_sum") || raw.numbers.contains("risk_f")) {
    for (const char* factor : {"entropy_reduction", "efficiency_gain", "cost_saving",
                               "decision_quality", "error_probability", "error_impact",
                               "correction_cost_ratio"}) {
      if (raw.numbers.contains(factor)) {
        schema_error(raw.row, factor, "factor column mixed into a components-only record");
      }
    }
    rec.inputs = ComponentInputs{required("positive_sum"), required("risk_f")};
  } else {
    FactorInputs in;
    in.factors.entropy_reduction = required("entropy_reduction");
    in.factors.efficiency_gain = required("efficiency_gain");
    in.factors.cost_saving = required("cost_saving");
    in.factors.decision_quality = required("decision_quality");
    in.risks.error_probability = required("error_probability");
    in.risks.error_impact = required("error_impact");
    in.risks.correction_cost_ratio = required("correction_cost_ratio");
    rec.inputs = in;
  }

  try {
    validate(rec);
  } catch (const Error& e) {
    schema_error(raw.row, "", e.what());
  }
  return rec;
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) schema_error(row, "", "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_quote(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

Dataset load_csv(std::istream& in, std::string source) {
  Dataset data;
  data.source = std::move(source);

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    auto fields = split_csv_line(line, line_no);
    if (header.empty()) {
      std::set<std::string> seen;
      for (auto& name : fields) {
        while (!name.empty() && name.back() == ' ') name.pop_back();
        while (!name.empty() && name.front() == ' ') name.erase(0, 1);
        const std::string canon = canonical_name(name);
        if (name != "id" && name != "label" && name != "notes" && !kNumericColumns.contains(canon)) {
          schema_error(line_no, name, "unknown column");
        }
        if (!seen.insert(canon).second) schema_error(line_no, name, "duplicate column");
      }
      if (!seen.contains("id") || !seen.contains("label")) {
        schema_error(line_no, "", "header must contain id and label");
      }
      header = std::move(fields);
      continue;
    }
    if (fields.size() != header.size()) {
      std::ostringstream msg;
      msg << "expected " << header.size() << " fields, found " << fields.size();
      schema_error(line_no, "", msg.str());
    }
    RawRecord raw;
    raw.row = line_no;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& name = header[c];
      if (name == "id" || name == "label" || name == "notes") {
        raw.strings[name] = fields[c];
      } else if (fields[c].find_first_not_of(" \t") != std::string::npos) {
        put_value(raw, name, parse_number(fields[c], line_no, name));
      }
    }
    CaseRecord rec = build_record(raw);
    if (!ids.insert(rec.id).second) schema_error(line_no, "id", "duplicate id '" + rec.id + "'");
    data.cases.push_back(std::move(rec));
  }
  return data;
}

double json_number(const ordered_json& v, std::size_t row, const std::string& key) {
  if (!v.is_number()) schema_error(row, key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(row, key, "value must be finite");
  return d;
}

Dataset load_json(std::istream& in, std::string source) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::validation, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::validation, "dataset document must be a JSON object");
  if (!doc.contains("cases") && doc.contains("id")) {
    doc = ordered_json{{"cases", ordered_json::array({doc})}};  // bare single-case document
  }

  Dataset data;
  data.source = doc.contains("source") && doc["source"].is_string()
                    ? doc["source"].get<std::string>()
                    : std::move(source);
  if (!doc.contains("cases") || !doc["cases"].is_array()) {
    fail(ErrorKind::validation, "dataset document needs a \"cases\" array");
  }

  std::set<std::string> ids;
  std::size_t row = 0;
  for (const auto& item : doc["cases"]) {
    ++row;
    if (!item.is_object()) schema_error(row, "", "case must be an object");
    RawRecord raw;
    raw.row = row;
    for (const auto& [key, value] : item.items()) {
      if (key == "id" || key == "label" || key == "notes") {
        if (!value.is_string()) schema_error(row, key, "expected a string");
        raw.strings[key] = value.get<std::string>();
      } else if (!value.is_null()) {
        put_value(raw, key, json_number(value, row, key));
      }
    }
    CaseRecord rec = build_record(raw);
    if (!ids.insert(rec.id).second) schema_error(row, "id", "duplicate id '" + rec.id + "'");
    data.cases.push_back(std::move(rec));
  }

  if (doc.contains("aggregates") && !doc["aggregates"].is_null()) {
    const auto& block = doc["aggregates"];
    if (!block.is_object()) fail(ErrorKind::validation, "aggregates must be an object");
    std::vector<AggregateStat> stats;
    for (const auto& [name, entry] : block.items()) {
      AggregateStat s;
      s.variable = name;
      if (!entry.is_object()) fail(ErrorKind::validation, "aggregate '" + name + "' must be an object");
      for (const char* key : {"mean", "sd", "success_mean", "failure_mean"}) {
        if (!entry.contains(key)) {
          fail(ErrorKind::validation, "aggregate '" + name + "' lacks " + key);
        }
      }
      s.unit = entry.value("unit", "");
      s.mean = json_number(entry["mean"], 0, name + ".mean");
      s.sd = json_number(entry["sd"], 0, name + ".sd");
      s.success_mean = json_number(entry["success_mean"], 0, name + ".success_mean");
      s.failure_mean = json_number(entry["failure_mean"], 0, name + ".failure_mean");
      stats.push_back(std::move(s));
    }
    data.aggregates = std::move(stats);
  }
  return data;
}

}  // namespace

const char* to_string(CaseLabel label) noexcept {
  switch (label) {
    case CaseLabel::success: return "success";
    case CaseLabel::failure: return "failure";
    case CaseLabel::unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

CaseLabel label_from_string(std::string_view text) {
  if (text == "success") return CaseLabel::success;
  if (text == "failure") return CaseLabel::failure;
  if (text == "unlabeled" || text.empty()) return CaseLabel::unlabeled;
  fail(ErrorKind::validation, "unknown label '" + std::string(text) + "'");
}

const CaseRecord& Dataset::find(std::string_view id) const {
  for (const auto& c : cases) {
    if (c.id == id) return c;
  }
  fail(ErrorKind::usage, "no case with id '" + std::string(id) + "'");
}

void validate(const CaseRecord& rec) {
  if (rec.id.empty()) fail(ErrorKind::validation, "case id must be non-empty");
  if (rec.market_success_rate) {
    const double m = *rec.market_success_rate;
    if (!std::isfinite(m) || m < 0.0 || m > 1.0) {
      std::ostringstream msg;
      msg << "market_success_rate = " << m << " outside [0, 1]";
      fail(ErrorKind::validation, msg.str());
    }
  }
  if (rec.stored_value && !std::isfinite(*rec.stored_value)) {
    fail(ErrorKind::validation, "value_v must be finite");
  }
  if (const auto* full = std::get_if<FactorInputs>(&rec.inputs)) {
    validate(full->factors);
    validate(full->risks);
  } else {
    const auto& parts = std::get<ComponentInputs>(rec.inputs);
    if (!std::isfinite(parts.positive_sum)) fail(ErrorKind::validation, "positive_sum must be finite");
    if (!std::isfinite(parts.risk_f) || parts.risk_f < 0.0) {
      fail(ErrorKind::validation, "risk_f must be finite and >= 0");
    }
  }
}

void validate(const Dataset& data) {
  std::set<std::string> ids;
  for (const auto& c : data.cases) {
    validate(c);
    if (!ids.insert(c.id).second) fail(ErrorKind::validation, "duplicate id '" + c.id + "'");
  }
}

Dataset load_cases(std::istream& in, DataFormat format, std::string source) {
  return format == DataFormat::json ? load_json(in, std::move(source))
                                    : load_csv(in, std::move(source));
}

Dataset load_cases(std::string_view text, DataFormat format, std::string source) {
  std::istringstream in{std::string(text)};
  return load_cases(in, format, std::move(source));
}

Dataset load_cases_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::validation, "cannot open " + path.string());
  const DataFormat format = path.extension() == ".json" ? DataFormat::json : DataFormat::csv;
  return load_cases(in, format, path.filename().string());
}

std::string emit_dataset(const Dataset& data, DataFormat format) {
  if (format == DataFormat::json) {
    ordered_json doc;
    doc["source"] = data.source;
    doc["cases"] = ordered_json::array();
    for (const auto& c : data.cases) {
      ordered_json item;
      item["id"] = c.id;
      item["label"] = to_string(c.label);
      if (const auto* full = std::get_if<FactorInputs>(&c.inputs)) {
        item["entropy_reduction"] = full->factors.entropy_reduction;
        item["efficiency_gain"] = full->factors.efficiency_gain;
        item["cost_saving"] = full->factors.cost_saving;
        item["decision_quality"] = full->factors.decision_quality;
        item["error_probability"] = full->risks.error_probability;
        item["error_impact"] = full->risks.error_impact;
        item["correction_cost_ratio"] = full->risks.correction_cost_ratio;
      } else {
        const auto& parts = std::get<ComponentInputs>(c.inputs);
        item["positive_sum"] = parts.positive_sum;
        item["risk_f"] = parts.risk_f;
      }
      if (c.stored_value) item["value_v"] = *c.stored_value;
      if (c.market_success_rate) item["market_success_rate"] = *c.market_success_rate;
      if (!c.notes.empty()) item["notes"] = c.notes;
      doc["cases"].push_back(std::move(item));
    }
    if (data.aggregates) {
      ordered_json block = ordered_json::object();
      for (const auto& s : *data.aggregates) {
        block[s.variable] = {{"unit", s.unit},
                             {"mean", s.mean},
                             {"sd", s.sd},
                             {"success_mean", s.success_mean},
                             {"failure_mean", s.failure_mean}};
      }
      doc["aggregates"] = std::move(block);
    }
    return doc.dump(2) + "\n";
  }

  const bool components = !data.cases.empty() && data.cases.front().components_only();
  bool has_value = false;
  bool has_notes = false;
  for (const auto& c : data.cases) {
    if (c.components_only() != components) {
      fail(ErrorKind::format, "CSV cannot mix components-only and factor-level records");
    }
    has_value = has_value || c.stored_value.has_value();
    has_notes = has_notes || !c.notes.empty();
  }
  std::vector<std::string> columns = components ? kComponentColumns : kFactorColumns;
  if (!components && has_value) columns.emplace_back("value_v");
  if (has_notes) columns.emplace_back("notes");

  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  const auto opt = [](const std::optional<double>& v) {
    return v ? format_shortest(*v) : std::string();
  };
  for (const auto& c : data.cases) {
    std::vector<std::string> fields = {csv_quote(c.id), to_string(c.label)};
    if (components) {
      const auto& parts = std::get<ComponentInputs>(c.inputs);
      fields.push_back(format_shortest(parts.positive_sum));
      fields.push_back(format_shortest(parts.risk_f));
      fields.push_back(opt(c.stored_value));
      fields.push_back(opt(c.market_success_rate));
    } else {
      const auto& full = std::get<FactorInputs>(c.inputs);
      for (double v : {full.factors.entropy_reduction, full.factors.efficiency_gain,
                       full.factors.cost_saving, full.factors.decision_quality,
                       full.risks.error_probability, full.risks.error_impact,
                       full.risks.correction_cost_ratio}) {
        fields.push_back(format_shortest(v));
      }
      fields.push_back(opt(c.market_success_rate));
      if (has_value) fields.push_back(opt(c.stored_value));
    }
    if (has_notes) fields.push_back(csv_quote(c.notes));
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  }
  return out.str();
}

Dataset bundled_paper_dataset() {
  struct Row {
    const char* id;
    CaseLabel label;
    double positive, f, v, success;
  };
  static constexpr Row kRows[] = {
      {"S1", CaseLabel::success, 1.86, 0.32, 1.54, 0.92},
      {"S2", CaseLabel::success, 2.15, 0.47, 1.68, 0.88},
      {"S3", CaseLabel::success, 1.72, 0.29, 1.43, 0.90},
      {"S4", CaseLabel::success, 2.31, 0.53, 1.78, 0.95},
      {"S5", CaseLabel::success, 1.98, 0.38, 1.60, 0.85},
      {"F1", CaseLabel::failure, 0.87, 3.26, -2.39, 0.12},
      {"F2", CaseLabel::failure, 0.72, 2.89, -2.17, 0.08},
      {"F3", CaseLabel::failure, 0.95, 4.12, -3.17, 0.05},
      {"F4", CaseLabel::failure, 0.68, 3.54, -2.86, 0.10},
      {"F5", CaseLabel::failure, 0.81, 2.97, -2.16, 0.15},
  };

  Dataset data;
  data.source = "bundled: published case table (N=10, default weights)";
  for (const auto& r : kRows) {
    CaseRecord rec;
    rec.id = r.id;
    rec.label = r.label;
    rec.inputs = ComponentInputs{r.positive, r.f};
    rec.stored_value = r.v;
    rec.market_success_rate = r.success;
    data.cases.push_back(std::move(rec));
  }
  // Percent columns are stored as fractions; currency columns keep their
  // published unit because no reference budget is given.
  data.aggregates = std::vector<AggregateStat>{
      {"entropy_reduction", "normalized", 0.52, 0.21, 0.73, 0.31},
      {"efficiency_gain", "fraction", 0.386, 0.152, 0.524, 0.248},
      {"cost_saving", "10k CNY per year", 286.3, 112.5, 412.7, 160.0},
      {"decision_quality", "likert_5", 3.8, 0.9, 4.5, 3.1},
      {"error_probability", "fraction", 0.128, 0.085, 0.053, 0.203},
      {"error_impact", "score_1_10", 4.2, 2.6, 2.1, 6.3},
      {"correction_cost", "10k CNY", 45.6, 31.2, 18.9, 72.3},
  };
  return data;
}

PairwiseMatrix load_pairwise_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> values;
    std::size_t column = 0;
    for (const auto& cell : split_csv_line(line, line_no)) {
      ++column;
      const std::string name = "c" + std::to_string(column);
      const auto slash = cell.find('/');
      if (slash == std::string::npos) {
        values.push_back(parse_number(cell, line_no, name));
      } else {
        const double num = parse_number(std::string_view(cell).substr(0, slash), line_no, name);
        const double den = parse_number(std::string_view(cell).substr(slash + 1), line_no, name);
        if (den == 0.0) schema_error(line_no, name, "zero denominator");
        values.push_back(num / den);
      }
    }
    rows.push_back(std::move(values));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) fail(ErrorKind::validation, "pairwise matrix file is empty");
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
      std::ostringstream msg;
      msg << "pairwise matrix row " << i + 1 << " has " << rows[static_cast<std::size_t>(i)].size()
          << " entries, expected " << n;
      fail(ErrorKind::validation, msg.str());
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return PairwiseMatrix(std::move(a));
}

PairwiseMatrix load_pairwise_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::validation, "cannot open " + path.string());
  return load_pairwise_matrix(in);
}

WeightProfile load_weights(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::validation, std::string("malformed weights JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::validation, "weights document must be a JSON object");
  WeightProfile w;
  w.provenance = WeightProvenance::manual;
  for (const auto& [key, value] : doc.items()) {
    if (key == "provenance") {
      if (!value.is_string()) fail(ErrorKind::validation, "provenance must be a string");
      w.provenance = provenance_from_string(value.get<std::string>());
      continue;
    }
    double* slot = key == "alpha"    ? &w.alpha
                   : key == "beta"   ? &w.beta
                   : key == "gamma"  ? &w.gamma
                   : key == "delta"  ? &w.delta
                   : key == "lambda" ? &w.lambda
                                     : nullptr;
    if (!slot) fail(ErrorKind::validation, "unknown weight '" + key + "'");
    if (!value.is_number()) fail(ErrorKind::validation, "weight '" + key + "' must be a number");
    *slot = value.get<double>();
  }
  validate(w);
  if (!doc.contains("provenance")) {
    const WeightProfile d = WeightProfile::defaults();
    const bool is_default = w.alpha == d.alpha && w.beta == d.beta && w.gamma == d.gamma &&
                            w.delta == d.delta && w.lambda == d.lambda;
    w.provenance = is_default ? WeightProvenance::default_profile : WeightProvenance::manual;
  }
  return w;
}

WeightProfile load_weights_file(const std::filesystem::path& path) {
  return load_weights(read_text_file(path));
}

std::string emit_weights(const WeightProfile& w) {
  ordered_json doc = {{"alpha", w.alpha}, {"beta", w.beta},     {"gamma", w.gamma},
                      {"delta", w.delta}, {"lambda", w.lambda}, {"provenance", to_string(w.provenance)}};
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::validation, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_shortest(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_sig6(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

}  // namespace aivalue
