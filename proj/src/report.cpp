#include "aivalue/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "aivalue/errors.hpp"
#include "aivalue/format.hpp"

namespace aivalue {

namespace {

std::string g6(double v) { return format_sig6(v); }

ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return format_shortest(v);
}

ordered_json num(const std::optional<double>& v) { return v ? num(*v) : ordered_json(nullptr); }

double get_num(const ordered_json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(ErrorKind::validation, "expected a number in report JSON, got " + j.dump());
}

std::optional<double> get_opt(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return get_num(j);
}

std::vector<double> get_nums(const ordered_json& j) {
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_num(v));
  return out;
}

ordered_json nums(const std::vector<double>& values) {
  ordered_json a = ordered_json::array();
  for (double v : values) a.push_back(num(v));
  return a;
}

bool numeric_cell(const std::string& cell) {
  if (cell == "inf" || cell == "-inf" || cell == "nan" || cell == "n/a") return true;
  char* end = nullptr;
  std::strtod(cell.c_str(), &end);
  return !cell.empty() && end == cell.c_str() + cell.size();
}

// Numeric columns are right-aligned, text columns left-aligned.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> width;
    std::vector<bool> right;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& row = rows_[r];
      width.resize(std::max(width.size(), row.size()), 0);
      right.resize(width.size(), true);
      for (std::size_t c = 0; c < row.size(); ++c) {
        width[c] = std::max(width[c], row[c].size());
        if (r > 0 && !numeric_cell(row[c])) right[c] = false;
      }
    }
    std::ostringstream out;
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        const std::string pad(width[c] - row[c].size(), ' ');
        if (c > 0) line += "  ";
        line += right[c] ? pad + row[c] : row[c] + pad;
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out << line << '\n';
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    const auto& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      line += '"';
      for (char c : f) {
        if (c == '"') line += '"';
        line += c;
      }
      line += '"';
    } else {
      line += f;
    }
  }
  return line + '\n';
}

std::string opt_g6(const std::optional<double>& v) { return v ? g6(*v) : std::string("n/a"); }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

EntropyMode entropy_mode_from_string(const std::string& s) {
  if (s == "raw_bits") return EntropyMode::raw_bits;
  if (s == "normalized") return EntropyMode::normalized;
  fail(ErrorKind::validation, "unknown entropy mode '" + s + "'");
}

PreferredFit preferred_from_string(const std::string& s) {
  if (s == "linear") return PreferredFit::linear;
  if (s == "quadratic") return PreferredFit::quadratic;
  fail(ErrorKind::validation, "unknown fit '" + s + "'");
}

}  // namespace

ReportFormat report_format_from_string(std::string_view text) {
  if (text == "text") return ReportFormat::text;
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  fail(ErrorKind::usage, "unknown format '" + std::string(text) + "' (text, json, csv)");
}

// ---- JSON bindings --------------------------------------------------------

void to_json(ordered_json& j, const WeightProfile& v) {
  j = {{"alpha", num(v.alpha)},   {"beta", num(v.beta)},     {"gamma", num(v.gamma)},
       {"delta", num(v.delta)},   {"lambda", num(v.lambda)}, {"provenance", to_string(v.provenance)}};
}

void from_json(const ordered_json& j, WeightProfile& v) {
  v.alpha = get_num(j.at("alpha"));
  v.beta = get_num(j.at("beta"));
  v.gamma = get_num(j.at("gamma"));
  v.delta = get_num(j.at("delta"));
  v.lambda = get_num(j.at("lambda"));
  v.provenance = provenance_from_string(j.at("provenance").get<std::string>());
}

void to_json(ordered_json& j, const ValueBreakdown& v) {
  ordered_json contributions = ordered_json::object();
  for (std::size_t i = 0; i < kTermNames.size(); ++i) {
    contributions[std::string(kTermNames[i])] = num(v.contributions[i]);
  }
  j = {{"positive_sum", num(v.positive_sum)},
       {"risk_magnitude", num(v.risk_magnitude)},
       {"risk_weight", num(v.risk_weight)},
       {"composite_value", num(v.composite_value)},
       {"contributions", std::move(contributions)},
       {"verdict", to_string(v.verdict)},
       {"aggregated_positive", v.aggregated_positive}};
}

void from_json(const ordered_json& j, ValueBreakdown& v) {
  v.positive_sum = get_num(j.at("positive_sum"));
  v.risk_magnitude = get_num(j.at("risk_magnitude"));
  v.risk_weight = get_num(j.at("risk_weight"));
  v.composite_value = get_num(j.at("composite_value"));
  const auto& c = j.at("contributions");
  for (std::size_t i = 0; i < kTermNames.size(); ++i) {
    v.contributions[i] = get_num(c.at(std::string(kTermNames[i])));
  }
  v.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  v.aggregated_positive = j.at("aggregated_positive").get<bool>();
}

void to_json(ordered_json& j, const BatchReport& v) {
  ordered_json cases = ordered_json::array();
  for (const auto& row : v.rows) {
    ordered_json item;
    item["id"] = row.id;
    item["breakdown"] = row.breakdown;
    cases.push_back(std::move(item));
  }
  j = {{"cases", std::move(cases)},
       {"summary",
        {{"count", v.rows.size()},
         {"proceed", v.proceed},
         {"review", v.review},
         {"reject", v.reject},
         {"mean_value", num(v.mean_value)},
         {"min_value", num(v.min_value)},
         {"max_value", num(v.max_value)}}}};
}

void from_json(const ordered_json& j, BatchReport& v) {
  v.rows.clear();
  for (const auto& item : j.at("cases")) {
    v.rows.push_back({item.at("id").get<std::string>(), item.at("breakdown").get<ValueBreakdown>()});
  }
  const auto& s = j.at("summary");
  v.proceed = s.at("proceed").get<std::size_t>();
  v.review = s.at("review").get<std::size_t>();
  v.reject = s.at("reject").get<std::size_t>();
  v.mean_value = get_num(s.at("mean_value"));
  v.min_value = get_num(s.at("min_value"));
  v.max_value = get_num(s.at("max_value"));
}

void to_json(ordered_json& j, const CorrelationResult& v) {
  j = {{"r", num(v.r)}, {"n", v.n}, {"t_stat", num(v.t_stat)}, {"p_value", num(v.p_value)}};
}

void from_json(const ordered_json& j, CorrelationResult& v) {
  v.r = get_num(j.at("r"));
  v.n = j.at("n").get<std::size_t>();
  v.t_stat = get_num(j.at("t_stat"));
  v.p_value = get_num(j.at("p_value"));
}

void to_json(ordered_json& j, const CurveFitComparison& v) {
  j = {{"r2_linear", num(v.r2_linear)},
       {"r2_quadratic", num(v.r2_quadratic)},
       {"adj_r2_linear", num(v.adj_r2_linear)},
       {"adj_r2_quadratic", num(v.adj_r2_quadratic)},
       {"quadratic_coefficient", num(v.quadratic_coefficient)},
       {"f_stat_quadratic_term", num(v.f_stat_quadratic_term)},
       {"p_value_quadratic_term", num(v.p_value_quadratic_term)},
       {"preferred", to_string(v.preferred)}};
}

void from_json(const ordered_json& j, CurveFitComparison& v) {
  v.r2_linear = get_num(j.at("r2_linear"));
  v.r2_quadratic = get_num(j.at("r2_quadratic"));
  v.adj_r2_linear = get_num(j.at("adj_r2_linear"));
  v.adj_r2_quadratic = get_num(j.at("adj_r2_quadratic"));
  v.quadratic_coefficient = get_num(j.at("quadratic_coefficient"));
  v.f_stat_quadratic_term = get_num(j.at("f_stat_quadratic_term"));
  v.p_value_quadratic_term = get_num(j.at("p_value_quadratic_term"));
  v.preferred = preferred_from_string(j.at("preferred").get<std::string>());
}

namespace {

ordered_json group_json(const GroupFit& g) {
  return {{"n", g.n}, {"standardized_beta", num(g.standardized_beta)}, {"p_value", num(g.p_value)}};
}

GroupFit group_from(const ordered_json& j) {
  return {j.at("n").get<std::size_t>(), get_num(j.at("standardized_beta")), get_num(j.at("p_value"))};
}

}  // namespace

void to_json(ordered_json& j, const ModerationReport& v) {
  j = {{"moderator_name", v.moderator_name},
       {"threshold", num(v.threshold)},
       {"low_group", group_json(v.low_group)},
       {"high_group", group_json(v.high_group)},
       {"attenuation", num(v.attenuation)},
       {"difference_z", num(v.difference_z)},
       {"difference_p", num(v.difference_p)}};
}

void from_json(const ordered_json& j, ModerationReport& v) {
  v.moderator_name = j.at("moderator_name").get<std::string>();
  v.threshold = get_num(j.at("threshold"));
  v.low_group = group_from(j.at("low_group"));
  v.high_group = group_from(j.at("high_group"));
  v.attenuation = get_num(j.at("attenuation"));
  v.difference_z = get_num(j.at("difference_z"));
  v.difference_p = get_num(j.at("difference_p"));
}

void to_json(ordered_json& j, const HypothesisReport& v) {
  ordered_json correlations = ordered_json::object();
  for (std::size_t i = 0; i < v.h1.factor_names.size(); ++i) {
    correlations[v.h1.factor_names[i]] = v.h1.factor_correlations[i];
  }
  j = {{"observations", v.observations},
       {"alpha", num(v.alpha)},
       {"h1",
        {{"factor_correlations", std::move(correlations)},
         {"best_single_r_squared", num(v.h1.best_single_r_squared)},
         {"joint_r_squared", num(v.h1.joint_r_squared)},
         {"joint_adjusted_r_squared", num(v.h1.joint_adjusted_r_squared)},
         {"interaction_beta", num(v.h1.interaction_beta)},
         {"interaction_p", num(v.h1.interaction_p)},
         {"supported", v.h1.supported}}},
       {"h2",
        {{"curve", v.h2.curve},
         {"perturbation_multiplier", num(v.h2.perturbation_multiplier)},
         {"max_scaling_error", num(v.h2.max_scaling_error)},
         {"perturbation_superlinear", v.h2.perturbation_superlinear},
         {"supported", v.h2.supported}}},
       {"h3", {{"moderation", v.h3.moderation}, {"supported", v.h3.supported}}}};
}

void from_json(const ordered_json& j, HypothesisReport& v) {
  v.observations = j.at("observations").get<std::size_t>();
  v.alpha = get_num(j.at("alpha"));
  const auto& h1 = j.at("h1");
  v.h1.factor_names.clear();
  v.h1.factor_correlations.clear();
  for (const auto& [name, value] : h1.at("factor_correlations").items()) {
    v.h1.factor_names.push_back(name);
    v.h1.factor_correlations.push_back(value.get<CorrelationResult>());
  }
  v.h1.best_single_r_squared = get_num(h1.at("best_single_r_squared"));
  v.h1.joint_r_squared = get_num(h1.at("joint_r_squared"));
  v.h1.joint_adjusted_r_squared = get_num(h1.at("joint_adjusted_r_squared"));
  v.h1.interaction_beta = get_num(h1.at("interaction_beta"));
  v.h1.interaction_p = get_num(h1.at("interaction_p"));
  v.h1.supported = h1.at("supported").get<bool>();
  const auto& h2 = j.at("h2");
  v.h2.curve = h2.at("curve").get<CurveFitComparison>();
  v.h2.perturbation_multiplier = get_num(h2.at("perturbation_multiplier"));
  v.h2.max_scaling_error = get_num(h2.at("max_scaling_error"));
  v.h2.perturbation_superlinear = h2.at("perturbation_superlinear").get<bool>();
  v.h2.supported = h2.at("supported").get<bool>();
  const auto& h3 = j.at("h3");
  v.h3.moderation = h3.at("moderation").get<ModerationReport>();
  v.h3.supported = h3.at("supported").get<bool>();
}

void to_json(ordered_json& j, const ValidationReport& v) {
  ordered_json checks = ordered_json::array();
  for (const auto& c : v.per_case_checks) {
    checks.push_back({{"id", c.id},
                      {"label", to_string(c.label)},
                      {"stored_value", num(c.stored_value)},
                      {"recomputed_value", num(c.recomputed_value)},
                      {"abs_delta", num(c.abs_delta)},
                      {"pass", c.pass}});
  }
  ordered_json notes = ordered_json::array();
  for (const auto& n : v.inconsistencies) {
    notes.push_back({{"key", n.key},
                     {"printed", n.printed},
                     {"recomputed", n.recomputed},
                     {"explanation", n.explanation}});
  }
  j = {{"source", v.source},
       {"tolerance", num(v.tolerance)},
       {"per_case_checks", std::move(checks)},
       {"passed", v.passed},
       {"total", v.per_case_checks.size()},
       {"sign_separation", v.sign_separation},
       {"correlation", v.correlation ? ordered_json(*v.correlation) : ordered_json(nullptr)},
       {"hypotheses", v.hypotheses ? ordered_json(*v.hypotheses) : ordered_json(nullptr)},
       {"hypothesis_note", v.hypothesis_note},
       {"published_inconsistencies", std::move(notes)}};
}

void from_json(const ordered_json& j, ValidationReport& v) {
  v.source = j.at("source").get<std::string>();
  v.tolerance = get_num(j.at("tolerance"));
  v.per_case_checks.clear();
  for (const auto& c : j.at("per_case_checks")) {
    v.per_case_checks.push_back({c.at("id").get<std::string>(),
                                 label_from_string(c.at("label").get<std::string>()),
                                 get_num(c.at("stored_value")), get_num(c.at("recomputed_value")),
                                 get_num(c.at("abs_delta")), c.at("pass").get<bool>()});
  }
  v.passed = j.at("passed").get<std::size_t>();
  v.sign_separation = j.at("sign_separation").get<bool>();
  v.correlation.reset();
  if (!j.at("correlation").is_null()) v.correlation = j.at("correlation").get<CorrelationResult>();
  v.hypotheses.reset();
  if (!j.at("hypotheses").is_null()) v.hypotheses = j.at("hypotheses").get<HypothesisReport>();
  v.hypothesis_note = j.at("hypothesis_note").get<std::string>();
  v.inconsistencies.clear();
  for (const auto& n : j.at("published_inconsistencies")) {
    v.inconsistencies.push_back({n.at("key").get<std::string>(), n.at("printed").get<std::string>(),
                                 n.at("recomputed").get<std::string>(),
                                 n.at("explanation").get<std::string>()});
  }
}

void to_json(ordered_json& j, const SweepGrid& v) {
  ordered_json swept = ordered_json::array();
  ordered_json grids = ordered_json::array();
  for (std::size_t a = 0; a < v.swept.size(); ++a) {
    swept.push_back(to_string(v.swept[a]));
    grids.push_back(nums(v.grids[a]));
  }
  ordered_json cells = ordered_json::array();
  for (const auto& c : v.cells) {
    cells.push_back({{"assignment", nums(c.assignment)}, {"value", num(c.value)}});
  }
  ordered_json flips = ordered_json::array();
  for (const auto& f : v.sign_flip_boundaries) {
    flips.push_back({{"from_cell", f.from_cell}, {"to_cell", f.to_cell}, {"axis", to_string(f.axis)}});
  }
  j = {{"swept", std::move(swept)}, {"grids", std::move(grids)},
       {"cells", std::move(cells)}, {"v_min", num(v.v_min)},
       {"v_max", num(v.v_max)},     {"sign_flip_boundaries", std::move(flips)}};
}

void from_json(const ordered_json& j, SweepGrid& v) {
  v = SweepGrid{};
  for (const auto& s : j.at("swept")) v.swept.push_back(weight_name_from_string(s.get<std::string>()));
  for (const auto& g : j.at("grids")) v.grids.push_back(get_nums(g));
  for (const auto& c : j.at("cells")) {
    v.cells.push_back({get_nums(c.at("assignment")), get_num(c.at("value"))});
  }
  v.v_min = get_num(j.at("v_min"));
  v.v_max = get_num(j.at("v_max"));
  for (const auto& f : j.at("sign_flip_boundaries")) {
    v.sign_flip_boundaries.push_back({f.at("from_cell").get<std::size_t>(),
                                      f.at("to_cell").get<std::size_t>(),
                                      weight_name_from_string(f.at("axis").get<std::string>())});
  }
}

void to_json(ordered_json& j, const PerturbationSeries& v) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : v.rows) {
    rows.push_back({{"multiplier", num(r.multiplier)},
                    {"factor_values", nums(r.factor_values)},
                    {"risk_f", num(r.risk_f)},
                    {"value", num(r.value)},
                    {"pct_change_f", num(r.pct_change_f)},
                    {"pct_change_v", num(r.pct_change_v)}});
  }
  j = {{"factor_name", v.factor_name}, {"base_values", nums(v.base_values)},
       {"base_f", num(v.base_f)},      {"base_v", num(v.base_v)},
       {"multipliers", nums(v.multipliers)}, {"rows", std::move(rows)}};
}

void from_json(const ordered_json& j, PerturbationSeries& v) {
  v = PerturbationSeries{};
  v.factor_name = j.at("factor_name").get<std::string>();
  v.base_values = get_nums(j.at("base_values"));
  v.base_f = get_num(j.at("base_f"));
  v.base_v = get_num(j.at("base_v"));
  v.multipliers = get_nums(j.at("multipliers"));
  for (const auto& r : j.at("rows")) {
    v.rows.push_back({get_num(r.at("multiplier")), get_nums(r.at("factor_values")),
                      get_num(r.at("risk_f")), get_num(r.at("value")), get_opt(r.at("pct_change_f")),
                      get_opt(r.at("pct_change_v"))});
  }
}

void to_json(ordered_json& j, const BreakevenResult& v) {
  j = {{"p_star", v.p_star ? num(*v.p_star) : ordered_json("saturated")},
       {"saturated", v.saturated()},
       {"unconstrained_root", num(v.unconstrained_root)},
       {"residual", num(v.residual)}};
}

void from_json(const ordered_json& j, BreakevenResult& v) {
  v.p_star.reset();
  if (!j.at("saturated").get<bool>()) v.p_star = get_num(j.at("p_star"));
  v.unconstrained_root = get_num(j.at("unconstrained_root"));
  v.residual = get_opt(j.at("residual"));
}

void to_json(ordered_json& j, const ScanReport& v) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : v.rows) {
    rows.push_back({{"probability", num(r.probability)},
                    {"risk_f", num(r.risk_f)},
                    {"value", num(r.value)},
                    {"verdict", to_string(r.verdict)}});
  }
  j = {{"rows", std::move(rows)}};
}

void from_json(const ordered_json& j, ScanReport& v) {
  v.rows.clear();
  for (const auto& r : j.at("rows")) {
    v.rows.push_back({get_num(r.at("probability")), get_num(r.at("risk_f")), get_num(r.at("value")),
                      verdict_from_string(r.at("verdict").get<std::string>())});
  }
}

void to_json(ordered_json& j, const AhpReport& v) {
  std::vector<double> w(v.result.weights.data(), v.result.weights.data() + v.result.weights.size());
  j = {{"weights", nums(w)},
       {"lambda_max", num(v.result.lambda_max)},
       {"consistency_index", num(v.result.consistency_index)},
       {"consistency_ratio", num(v.result.consistency_ratio)},
       {"acceptable", v.result.acceptable},
       {"iterations", v.result.iterations},
       {"profile", v.profile ? ordered_json(*v.profile) : ordered_json(nullptr)},
       {"profile_note", v.profile_note}};
}

void from_json(const ordered_json& j, AhpReport& v) {
  const auto w = get_nums(j.at("weights"));
  v.result.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  v.result.lambda_max = get_num(j.at("lambda_max"));
  v.result.consistency_index = get_num(j.at("consistency_index"));
  v.result.consistency_ratio = get_num(j.at("consistency_ratio"));
  v.result.acceptable = j.at("acceptable").get<bool>();
  v.result.iterations = j.at("iterations").get<int>();
  v.profile.reset();
  if (!j.at("profile").is_null()) v.profile = j.at("profile").get<WeightProfile>();
  v.profile_note = j.at("profile_note").get<std::string>();
}

void to_json(ordered_json& j, const EntropyComparison& v) {
  j = {{"mode", v.mode == EntropyMode::normalized ? "normalized" : "raw_bits"},
       {"before", num(v.before)},
       {"after", num(v.after)},
       {"reduction", num(v.reduction)}};
}

void from_json(const ordered_json& j, EntropyComparison& v) {
  v.mode = entropy_mode_from_string(j.at("mode").get<std::string>());
  v.before = get_num(j.at("before"));
  v.after = get_num(j.at("after"));
  v.reduction = get_num(j.at("reduction"));
}

// ---- emitters -------------------------------------------------------------

std::string emit_report(const ValueBreakdown& b, ReportFormat format) {
  if (format == ReportFormat::json) return dump(ordered_json(b));
  const auto terms = decompose(b);
  if (format == ReportFormat::csv) {
    std::string out = csv_line({"term", "contribution", "share"});
    for (const auto& t : terms) out += csv_line({t.name, g6(t.contribution), g6(t.share)});
    return out;
  }
  TextTable table({"term", "contribution", "share"});
  for (const auto& t : terms) table.add({t.name, g6(t.contribution), g6(t.share)});
  std::ostringstream out;
  out << table.render();
  out << "positive sum:    " << g6(b.positive_sum) << '\n'
      << "risk f:          " << g6(b.risk_magnitude) << " (lambda " << g6(b.risk_weight) << ")\n"
      << "composite value: " << g6(b.composite_value) << '\n'
      << "verdict:         " << to_string(b.verdict) << '\n';
  return out.str();
}

std::string emit_report(const BatchReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return dump(ordered_json(r));
  if (format == ReportFormat::csv) {
    std::string out = csv_line({"id", "positive_sum", "risk_f", "value_v", "verdict"});
    for (const auto& row : r.rows) {
      const auto& b = row.breakdown;
      out += csv_line({row.id, g6(b.positive_sum), g6(b.risk_magnitude), g6(b.composite_value),
                       to_string(b.verdict)});
    }
    return out;
  }
  TextTable table({"id", "positive", "f", "V", "verdict"});
  for (const auto& row : r.rows) {
    const auto& b = row.breakdown;
    table.add({row.id, g6(b.positive_sum), g6(b.risk_magnitude), g6(b.composite_value),
               to_string(b.verdict)});
  }
  std::ostringstream out;
  out << table.render() << r.rows.size() << " cases: " << r.proceed << " proceed, " << r.review
      << " review, " << r.reject << " reject";
  if (!r.rows.empty()) {
    out << "; V mean " << g6(r.mean_value) << ", min " << g6(r.min_value) << ", max "
        << g6(r.max_value);
  }
  out << '\n';
  return out.str();
}

std::string emit_report(const HypothesisReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return dump(ordered_json(r));
  if (format == ReportFormat::csv) {
    fail(ErrorKind::format, "hypothesis reports are nested; use text or json");
  }
  const auto yes = [](bool b) { return b ? "supported" : "not supported"; };
  std::ostringstream out;
  out << "hypothesis suite (n = " << r.observations << ", alpha = " << g6(r.alpha) << ")\n\n";
  out << "H1 positive-factor synergy: " << yes(r.h1.supported) << '\n';
  TextTable t1({"factor", "r", "p"});
  for (std::size_t i = 0; i < r.h1.factor_names.size(); ++i) {
    t1.add({r.h1.factor_names[i], g6(r.h1.factor_correlations[i].r),
            g6(r.h1.factor_correlations[i].p_value)});
  }
  out << t1.render();
  out << "best single R^2 " << g6(r.h1.best_single_r_squared) << ", joint R^2 "
      << g6(r.h1.joint_r_squared) << ", joint adjusted R^2 " << g6(r.h1.joint_adjusted_r_squared)
      << "\ninteraction beta " << g6(r.h1.interaction_beta) << " (p = " << g6(r.h1.interaction_p)
      << ")\n\n";
  const auto& c = r.h2.curve;
  out << "H2 non-linear risk: " << yes(r.h2.supported) << '\n'
      << "R^2 linear " << g6(c.r2_linear) << ", quadratic " << g6(c.r2_quadratic)
      << "; partial F " << g6(c.f_stat_quadratic_term) << " (p = " << g6(c.p_value_quadratic_term)
      << "), preferred " << to_string(c.preferred) << "\nquadratic coefficient "
      << g6(c.quadratic_coefficient) << "; k = " << g6(r.h2.perturbation_multiplier)
      << " scaling error " << g6(r.h2.max_scaling_error) << "\n\n";
  const auto& m = r.h3.moderation;
  out << "H3 risk moderation: " << yes(r.h3.supported) << '\n';
  TextTable t3({"group", "n", "beta", "p"});
  t3.add({m.moderator_name + " < " + g6(m.threshold), std::to_string(m.low_group.n),
          g6(m.low_group.standardized_beta), g6(m.low_group.p_value)});
  t3.add({m.moderator_name + " >= " + g6(m.threshold), std::to_string(m.high_group.n),
          g6(m.high_group.standardized_beta), g6(m.high_group.p_value)});
  out << t3.render() << "attenuation " << g6(m.attenuation) << ", difference z "
      << g6(m.difference_z) << " (p = " << g6(m.difference_p) << ")\n";
  return out.str();
}

std::string emit_report(const ValidationReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return dump(ordered_json(r));
  if (format == ReportFormat::csv) {
    std::string out =
        csv_line({"id", "label", "stored_value", "recomputed_value", "abs_delta", "pass"});
    for (const auto& c : r.per_case_checks) {
      out += csv_line({c.id, to_string(c.label), g6(c.stored_value), g6(c.recomputed_value),
                       g6(c.abs_delta), c.pass ? "pass" : "fail"});
    }
    return out;
  }
  std::ostringstream out;
  out << "validation of " << r.source << "\ntolerance " << g6(r.tolerance) << "\n\n";
  TextTable table({"id", "label", "stored V", "recomputed V", "|delta|", "status"});
  for (const auto& c : r.per_case_checks) {
    table.add({c.id, to_string(c.label), g6(c.stored_value), g6(c.recomputed_value),
               g6(c.abs_delta), c.pass ? "pass" : "FAIL"});
  }
  out << table.render() << '\n'
      << r.passed << '/' << r.per_case_checks.size() << " pass\n"
      << "sign separation: " << (r.sign_separation ? "yes" : "no") << '\n';
  if (r.correlation) {
    out << "correlation of V with market success: r = " << g6(r.correlation->r)
        << ", t = " << g6(r.correlation->t_stat) << ", p = " << g6(r.correlation->p_value)
        << ", n = " << r.correlation->n << '\n';
  } else {
    out << "correlation of V with market success: n/a\n";
  }
  out << r.hypothesis_note << '\n';
  if (r.hypotheses) out << '\n' << emit_report(*r.hypotheses, ReportFormat::text);
  out << "\npublished inconsistencies (" << r.inconsistencies.size() << "):\n";
  for (const auto& n : r.inconsistencies) {
    out << "- " << n.key << "\n    printed:    " << n.printed << "\n    recomputed: "
        << n.recomputed << "\n    " << n.explanation << '\n';
  }
  return out.str();
}

std::string emit_report(const SweepGrid& g, ReportFormat format) {
  if (format == ReportFormat::json) return dump(ordered_json(g));
  std::vector<std::string> header;
  for (WeightName w : g.swept) header.emplace_back(to_string(w));
  header.emplace_back("value");
  if (format == ReportFormat::csv) {
    std::string out = csv_line(header);
    for (const auto& c : g.cells) {
      std::vector<std::string> row;
      for (double a : c.assignment) row.push_back(g6(a));
      row.push_back(g6(c.value));
      out += csv_line(row);
    }
    return out;
  }
  TextTable table(header);
  for (const auto& c : g.cells) {
    std::vector<std::string> row;
    for (double a : c.assignment) row.push_back(g6(a));
    row.push_back(g6(c.value));
    table.add(std::move(row));
  }
  std::ostringstream out;
  out << table.render() << g.cells.size() << " cells; V in [" << g6(g.v_min) << ", "
      << g6(g.v_max) << "]; " << g.sign_flip_boundaries.size() << " sign flips\n";
  for (const auto& f : g.sign_flip_boundaries) {
    out << "  sign flip along " << to_string(f.axis) << " between cells " << f.from_cell << " and "
        << f.to_cell << '\n';
  }
  return out.str();
}

std::string emit_report(const PerturbationSeries& s, ReportFormat format) {
  if (format == ReportFormat::json) return dump(ordered_json(s));
  const std::vector<std::string> header = {"multiplier", s.factor_name, "f", "V", "pct_change_f",
                                           "pct_change_v"};
  auto row_of = [&](const PerturbationRow& r) {
    std::string values;
    for (std::size_t i = 0; i < r.factor_values.size(); ++i) {
      values += (i ? ";" : "") + g6(r.factor_values[i]);
    }
    return std::vector<std::string>{g6(r.multiplier), values, g6(r.risk_f), g6(r.value),
                                    opt_g6(r.pct_change_f), opt_g6(r.pct_change_v)};
  };
  if (format == ReportFormat::csv) {
    std::string out = csv_line(header);
    for (const auto& r : s.rows) out += csv_line(row_of(r));
    return out;
  }
  TextTable table(header);
  for (const auto& r : s.rows) table.add(row_of(r));
  std::ostringstream out;
  out << "base f " << g6(s.base_f) << ", base V " << g6(s.base_v)
      << " (changes are relative to the base)\n"
      << table.render();
  return out.str();
}

std::string emit_report(const BreakevenResult& r, ReportFormat format) {
  if (format == ReportFormat::json) return dump(ordered_json(r));
  const std::string p = r.p_star ? g6(*r.p_star) : std::string("saturated");
  if (format == ReportFormat::csv) {
    return csv_line({"p_star", "unconstrained_root", "residual"}) +
           csv_line({p, g6(r.unconstrained_root), opt_g6(r.residual)});
  }
  std::ostringstream out;
  out << "break-even error probability: " << p << '\n';
  if (r.saturated()) {
    out << "V stays positive on all of [0, 1] (root " << g6(r.unconstrained_root) << ")\n";
  } else {
    out << "residual |V(p*)|: " << opt_g6(r.residual) << '\n';
  }
  return out.str();
}

std::string emit_report(const ScanReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return dump(ordered_json(r));
  const std::vector<std::string> header = {"error_probability", "f", "V", "verdict"};
  if (format == ReportFormat::csv) {
    std::string out = csv_line(header);
    for (const auto& row : r.rows) {
      out += csv_line({g6(row.probability), g6(row.risk_f), g6(row.value), to_string(row.verdict)});
    }
    return out;
  }
  TextTable table(header);
  for (const auto& row : r.rows) {
    table.add({g6(row.probability), g6(row.risk_f), g6(row.value), to_string(row.verdict)});
  }
  return table.render();
}

std::string emit_report(const AhpReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return dump(ordered_json(r));
  const auto& res = r.result;
  if (format == ReportFormat::csv) {
    std::string out = csv_line({"criterion", "weight"});
    for (Eigen::Index i = 0; i < res.weights.size(); ++i) {
      out += csv_line({std::to_string(i + 1), g6(res.weights(i))});
    }
    return out;
  }
  TextTable table({"criterion", "weight"});
  for (Eigen::Index i = 0; i < res.weights.size(); ++i) {
    table.add({std::to_string(i + 1), g6(res.weights(i))});
  }
  std::ostringstream out;
  out << table.render() << "lambda_max " << g6(res.lambda_max) << ", CI "
      << g6(res.consistency_index) << ", CR " << g6(res.consistency_ratio) << " ("
      << (res.acceptable ? "acceptable" : "inconsistent") << ")\n";
  if (r.profile) {
    const auto& p = *r.profile;
    out << "profile: alpha " << g6(p.alpha) << ", beta " << g6(p.beta) << ", gamma "
        << g6(p.gamma) << ", delta " << g6(p.delta) << ", lambda " << g6(p.lambda) << '\n';
  }
  if (!r.profile_note.empty()) out << r.profile_note << '\n';
  return out.str();
}

std::string emit_report(const EntropyComparison& c, ReportFormat format) {
  if (format == ReportFormat::json) return dump(ordered_json(c));
  const char* mode = c.mode == EntropyMode::normalized ? "normalized" : "bits";
  if (format == ReportFormat::csv) {
    return csv_line({"mode", "before", "after", "reduction"}) +
           csv_line({mode, g6(c.before), g6(c.after), g6(c.reduction)});
  }
  std::ostringstream out;
  out << "H before: " << g6(c.before) << ' ' << mode << "\nH after:  " << g6(c.after) << ' '
      << mode << "\nreduction: " << g6(c.reduction) << '\n';
  return out.str();
}

}  // namespace aivalue
