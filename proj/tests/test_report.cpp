#include <doctest.h>

#include <limits>
#include <sstream>

#include "aivalue/dataset.hpp"
#include "aivalue/errors.hpp"
#include "aivalue/format.hpp"
#include "aivalue/report.hpp"

using namespace aivalue;

namespace {

template <typename T>
T reparse(const T& value) {
  return ordered_json::parse(emit_report(value, ReportFormat::json)).template get<T>();
}

bool has_line_with(const std::string& text, std::initializer_list<const char*> parts) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    bool all = true;
    for (const char* p : parts) all = all && line.find(p) != std::string::npos;
    if (all) return true;
  }
  return false;
}

FactorInputs sample_case() { return {{0.7, 0.45, 0.3, 1.0}, {0.12, 6.0, 0.2}}; }

}  // namespace

TEST_CASE("six significant digits") {
  CHECK(format_sig6(1.54) == "1.54");
  CHECK(format_sig6(2.0739600000001) == "2.07396");
  CHECK(format_sig6(-0.0) == "0");
  CHECK(format_sig6(1.2508994586840637e-8) == "1.2509e-08");
  CHECK(format_sig6(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_shortest(0.1) == "0.1");
}

TEST_CASE("validation report text, csv and json") {
  const auto r = validate_paper_tables(bundled_paper_dataset());
  const auto text = emit_report(r, ReportFormat::text);
  CHECK(has_line_with(text, {"S1", "1.54", "pass"}));
  CHECK(text.find("10/10 pass") != std::string::npos);
  CHECK(text.find("not reproducible") != std::string::npos);
  CHECK(text == emit_report(validate_paper_tables(bundled_paper_dataset()), ReportFormat::text));

  const auto csv = emit_report(r, ReportFormat::csv);
  CHECK(csv.rfind("id,label,stored_value,recomputed_value,abs_delta,pass\n", 0) == 0);
  CHECK(csv.find("S1,success,1.54,1.54,0,pass\n") != std::string::npos);

  CHECK(reparse(r) == r);
}

TEST_CASE("empty sweep is a header-only csv") {
  SweepGrid g;
  g.swept = {WeightName::lambda};
  g.grids = {{}};
  CHECK(emit_report(g, ReportFormat::csv) == "lambda,value\n");
}

TEST_CASE("json round trips") {
  const auto w = WeightProfile::defaults();
  const auto b = composite_value(sample_case().factors, sample_case().risks);
  CHECK(reparse(b) == b);
  CHECK(reparse(score_batch(bundled_paper_dataset())) == score_batch(bundled_paper_dataset()));

  const std::vector<WeightRange> ranges = {{WeightName::lambda, 0, 3, 4}, {WeightName::beta, 0, 1, 3}};
  const auto grid = weight_sweep(sample_case(), ranges);
  CHECK(reparse(grid) == grid);

  const std::vector<RiskField> fields = {RiskField::error_probability};
  const std::vector<double> ks = {1, 1.5, 2};
  const auto series = perturb_risk_factor(sample_case(), w, fields, ks);
  CHECK(reparse(series) == series);
  // A zero base leaves the relative change undefined; that survives as null.
  const auto zero_base = perturb_risk_factor(FactorInputs{{}, {0.1, 2, 0}}, w, fields, ks);
  CHECK(reparse(zero_base) == zero_base);

  const auto be = breakeven_probability(sample_case(), w);
  CHECK(reparse(be) == be);
  const auto sat = breakeven_probability(FactorInputs{{1, 1, 1, 5}, {0.3, 1, 0}}, w);
  CHECK(reparse(sat) == sat);

  const std::vector<double> grid_p = {0, 0.5, 1};
  const ScanReport scan{threshold_scan(sample_case(), w, grid_p)};
  CHECK(reparse(scan) == scan);

  Eigen::Matrix3d a;
  a << 1, 2, 5, 1.0 / 2, 1, 3, 1.0 / 5, 1.0 / 3, 1;
  const AhpReport ahp{ahp_weights(PairwiseMatrix(a)), std::nullopt, "three criteria"};
  CHECK(reparse(ahp) == ahp);
  const Eigen::VectorXd g5 = (Eigen::VectorXd(5) << 1, 0.5, 0.3, 0.2, 1).finished();
  const auto r5 = ahp_weights(PairwiseMatrix::from_generator(g5));
  const AhpReport ahp5{r5, profile_from_ahp(r5), ""};
  CHECK(reparse(ahp5) == ahp5);

  const auto e = compare_entropy(DiscreteDistribution::uniform(4), DiscreteDistribution::point_mass(4, 0));
  CHECK(reparse(e) == e);

  SyntheticConfig cfg;
  cfg.cases = 60;
  const auto h = run_hypothesis_suite(synthetic_population(cfg));
  CHECK(reparse(h) == h);
}

TEST_CASE("non-finite values survive json") {
  Eigen::VectorXd x(4);
  x << 1, 2, 3, 4;
  CorrelationResult c{1.0, 4, std::numeric_limits<double>::infinity(), 0.0};
  const auto j = ordered_json(c);
  CHECK(j["t_stat"] == "inf");
  CHECK(j.get<CorrelationResult>() == c);
}

TEST_CASE("hypothesis reports have no csv form") {
  CHECK_THROWS_AS(emit_report(HypothesisReport{}, ReportFormat::csv), Error);
}

TEST_CASE("value breakdown text lists every term") {
  const auto text = emit_report(composite_value(sample_case().factors, sample_case().risks), ReportFormat::text);
  for (auto name : kTermNames) CHECK(text.find(std::string(name)) != std::string::npos);
  CHECK(text.find("proceed") != std::string::npos);
}

TEST_CASE("format names") {
  CHECK(report_format_from_string("json") == ReportFormat::json);
  CHECK_THROWS_AS(report_format_from_string("xml"), Error);
}
