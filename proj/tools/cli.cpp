#include "cli.hpp"

#include <charconv>
#include <map>
#include <ostream>
#include <string_view>

#include <CLI11.hpp>

#include "aivalue/ahp.hpp"
#include "aivalue/dataset.hpp"
#include "aivalue/entropy.hpp"
#include "aivalue/errors.hpp"
#include "aivalue/report.hpp"
#include "aivalue/sensitivity.hpp"
#include "aivalue/validation.hpp"

namespace aivalue::cli {

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
    case ErrorKind::resource:
      return kExitUsage;
    case ErrorKind::consistency:
    case ErrorKind::integrity:
      return kExitFailed;
    default:
      return kExitData;
  }
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_number(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorKind::usage, std::string(what) + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> values;
  for (auto part : split(text, ',')) values.push_back(parse_number(part, what));
  return values;
}

// name=lo:hi:steps
WeightRange parse_range(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos) {
    fail(ErrorKind::usage, "--weight expects name=lo:hi:steps, got '" + std::string(spec) + "'");
  }
  const auto bounds = split(spec.substr(eq + 1), ':');
  if (bounds.size() != 3) {
    fail(ErrorKind::usage, "--weight expects name=lo:hi:steps, got '" + std::string(spec) + "'");
  }
  WeightName name;
  try {
    name = weight_name_from_string(spec.substr(0, eq));
  } catch (const Error& e) {
    fail(ErrorKind::usage, e.what());
  }
  const double steps = parse_number(bounds[2], "--weight steps");
  if (steps < 1 || steps != static_cast<double>(static_cast<std::size_t>(steps))) {
    fail(ErrorKind::usage, "--weight steps must be a positive integer");
  }
  return {name, parse_number(bounds[0], "--weight lo"), parse_number(bounds[1], "--weight hi"),
          static_cast<std::size_t>(steps)};
}

CaseRecord load_single_case(const std::string& path) {
  auto dataset = load_cases_file(path);
  if (dataset.cases.size() != 1) {
    fail(ErrorKind::validation,
         path + ": expected exactly one case, found " + std::to_string(dataset.cases.size()));
  }
  return dataset.cases.front();
}

const FactorInputs& factor_inputs(const CaseRecord& record, std::string_view command) {
  const auto* inputs = std::get_if<FactorInputs>(&record.inputs);
  if (!inputs) {
    fail(ErrorKind::capability, std::string(command) + " needs factor-level inputs; case '" +
                                    record.id + "' only has positive_sum and risk_f");
  }
  return *inputs;
}

WeightProfile load_profile(const std::string& path) {
  return path.empty() ? WeightProfile::defaults() : load_weights_file(path);
}

struct Options {
  std::string case_file;
  std::string cases_file;
  std::string weights_file;
  std::map<const CLI::App*, std::string> formats;
  double tolerance = 0.005;
  double reject_below = 0.0;
  double proceed_above = 0.0;
  std::vector<std::string> weight_specs;
  std::string factors;
  std::string multipliers;
  std::string probabilities;
  std::string before;
  std::string after;
  bool normalized = false;
  std::string matrix_file;
  bool override_consistency = false;
  std::size_t synthetic = 0;
  std::uint64_t seed = 1;
  double noise = 0.05;
};

CLI::Option* add_format(CLI::App* cmd, Options& o, std::vector<std::string> allowed,
                        std::string fallback = "text") {
  auto& format = o.formats[cmd];
  format = std::move(fallback);
  return cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember(std::move(allowed)))
      ->capture_default_str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Composite value model for AI products: scoring, validation and calibration",
               "aivalue"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  Options o;
  const std::vector<std::string> all = {"text", "json", "csv"};

  auto* score = app.add_subcommand("score", "Score one case");
  score->add_option("--case", o.case_file, "Case file (csv or json)")->required();
  score->add_option("--weights", o.weights_file, "Weights json");
  score->add_option("--reject-below", o.reject_below, "Reject when V is below this");
  score->add_option("--proceed-above", o.proceed_above, "Proceed when V is above this");
  add_format(score, o, all);

  auto* batch = app.add_subcommand("batch", "Score every case in a file");
  batch->add_option("--cases", o.cases_file, "Cases file (csv or json)")->required();
  batch->add_option("--weights", o.weights_file, "Weights json");
  batch->add_option("--reject-below", o.reject_below, "Reject when V is below this");
  batch->add_option("--proceed-above", o.proceed_above, "Proceed when V is above this");
  add_format(batch, o, all);

  auto* validate_cmd = app.add_subcommand("validate-paper", "Recompute the published case table");
  validate_cmd->add_option("--tolerance", o.tolerance, "Allowed |stored - recomputed|")
      ->capture_default_str();
  validate_cmd->add_option("--cases", o.cases_file,
                           "Validate this file instead of the bundled table");
  validate_cmd->add_option("--weights", o.weights_file, "Weights json");
  add_format(validate_cmd, o, all);

  auto* sweep = app.add_subcommand("sweep", "Grid over one or more weights");
  sweep->add_option("--case", o.case_file, "Case file")->required();
  sweep->add_option("--weight", o.weight_specs, "name=lo:hi:steps (repeatable)")->required();
  sweep->add_option("--weights", o.weights_file, "Base weights json");
  add_format(sweep, o, all, "csv");

  auto* perturb = app.add_subcommand("perturb", "Scale risk factors and track f and V");
  perturb->add_option("--case", o.case_file, "Case file")->required();
  perturb->add_option("--factor", o.factors,
                      "error_probability, error_impact, correction_cost_ratio (comma-joined)")
      ->required();
  perturb->add_option("--multipliers", o.multipliers, "k1,k2,...")->required();
  perturb->add_option("--weights", o.weights_file, "Weights json");
  add_format(perturb, o, all);

  auto* breakeven = app.add_subcommand("breakeven", "Error probability at which V = 0");
  breakeven->add_option("--case", o.case_file, "Case file")->required();
  breakeven->add_option("--weights", o.weights_file, "Weights json");
  add_format(breakeven, o, all);

  auto* scan = app.add_subcommand("scan", "V and verdict over a grid of error probabilities");
  scan->add_option("--case", o.case_file, "Case file")->required();
  scan->add_option("--probabilities", o.probabilities, "p1,p2,... strictly increasing in [0, 1]")
      ->required();
  scan->add_option("--weights", o.weights_file, "Weights json");
  scan->add_option("--reject-below", o.reject_below, "Reject when V is below this");
  scan->add_option("--proceed-above", o.proceed_above, "Proceed when V is above this");
  add_format(scan, o, all);

  auto* entropy = app.add_subcommand("entropy", "Entropy reduction between two distributions");
  entropy->add_option("--before", o.before, "Comma-separated probabilities")->required();
  entropy->add_option("--after", o.after, "Comma-separated probabilities")->required();
  entropy->add_flag("--normalized", o.normalized, "Divide by log2 of the support size");
  add_format(entropy, o, all);

  auto* ahp = app.add_subcommand("ahp", "Weights from a pairwise comparison matrix");
  ahp->add_option("--matrix", o.matrix_file, "Square csv matrix, entries like 3 or 1/3")
      ->required();
  ahp->add_flag("--override-consistency", o.override_consistency,
                "Derive a profile even when CR > 0.10");
  add_format(ahp, o, all);

  auto* hypotheses = app.add_subcommand("hypotheses", "H1-H3 tests on factor-level data");
  auto* cases_opt = hypotheses->add_option("--cases", o.cases_file, "Cases file");
  auto* synth_opt =
      hypotheses->add_option("--synthetic", o.synthetic, "Generate this many synthetic cases");
  cases_opt->excludes(synth_opt);
  hypotheses->add_option("--seed", o.seed, "Synthetic seed")->capture_default_str();
  hypotheses->add_option("--noise", o.noise, "Synthetic noise sigma")->capture_default_str();
  hypotheses->add_option("--weights", o.weights_file, "Weights json");
  add_format(hypotheses, o, {"text", "json"});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto format = report_format_from_string(o.formats.at(app.get_subcommands().front()));
    const VerdictThresholds thresholds{o.reject_below, o.proceed_above};
    const auto weights = load_profile(o.weights_file);

    if (score->parsed()) {
      aivalue::validate(thresholds);
      const auto record = load_single_case(o.case_file);
      out << emit_report(evaluate(record.inputs, weights, thresholds), format);
      return kExitOk;
    }
    if (batch->parsed()) {
      aivalue::validate(thresholds);
      out << emit_report(score_batch(load_cases_file(o.cases_file), weights, thresholds), format);
      return kExitOk;
    }
    if (validate_cmd->parsed()) {
      if (!(o.tolerance >= 0.0)) fail(ErrorKind::usage, "--tolerance must be >= 0");
      const auto dataset = o.cases_file.empty() ? bundled_paper_dataset()
                                                : load_cases_file(o.cases_file);
      const auto report = validate_paper_tables(dataset, weights, o.tolerance);
      out << emit_report(report, format);
      if (!report.all_pass()) {
        err << "error: " << report.per_case_checks.size() - report.passed << " of "
            << report.per_case_checks.size() << " cases do not match their stored value\n";
        return kExitFailed;
      }
      return kExitOk;
    }
    if (sweep->parsed()) {
      std::vector<WeightRange> ranges;
      for (const auto& spec : o.weight_specs) ranges.push_back(parse_range(spec));
      const auto record = load_single_case(o.case_file);
      out << emit_report(weight_sweep(record.inputs, ranges, weights), format);
      return kExitOk;
    }
    if (perturb->parsed()) {
      std::vector<RiskField> fields;
      for (auto name : split(o.factors, ',')) {
        try {
          fields.push_back(risk_field_from_string(name));
        } catch (const Error& e) {
          fail(ErrorKind::usage, e.what());
        }
      }
      const auto multipliers = parse_list(o.multipliers, "--multipliers");
      const auto record = load_single_case(o.case_file);
      out << emit_report(
          perturb_risk_factor(factor_inputs(record, "perturb"), weights, fields, multipliers),
          format);
      return kExitOk;
    }
    if (breakeven->parsed()) {
      const auto record = load_single_case(o.case_file);
      out << emit_report(breakeven_probability(factor_inputs(record, "breakeven"), weights),
                         format);
      return kExitOk;
    }
    if (scan->parsed()) {
      aivalue::validate(thresholds);
      const auto grid = parse_list(o.probabilities, "--probabilities");
      const auto record = load_single_case(o.case_file);
      ScanReport report{threshold_scan(factor_inputs(record, "scan"), weights, grid, thresholds)};
      out << emit_report(report, format);
      return kExitOk;
    }
    if (entropy->parsed()) {
      DiscreteDistribution before = [&] {
        try {
          return parse_distribution(o.before);
        } catch (const Error& e) {
          fail(e.kind(), std::string("--before: ") + e.what());
        }
      }();
      DiscreteDistribution after = [&] {
        try {
          return parse_distribution(o.after);
        } catch (const Error& e) {
          fail(e.kind(), std::string("--after: ") + e.what());
        }
      }();
      const auto mode = o.normalized ? EntropyMode::normalized : EntropyMode::raw_bits;
      out << emit_report(compare_entropy(before, after, mode), format);
      return kExitOk;
    }
    if (ahp->parsed()) {
      AhpReport report{ahp_weights(load_pairwise_matrix_file(o.matrix_file)), std::nullopt, {}};
      int code = kExitOk;
      if (report.result.weights.size() != 5) {
        report.profile_note = "no weight profile: a profile needs exactly 5 criteria";
      } else if (!report.result.acceptable && !o.override_consistency) {
        report.profile_note =
            "no weight profile: CR above 0.10 (pass --override-consistency to use it anyway)";
        err << "error: pairwise matrix is inconsistent (CR = "
            << report.result.consistency_ratio << ")\n";
        code = kExitFailed;
      } else {
        report.profile = profile_from_ahp(report.result, o.override_consistency);
        if (!report.result.acceptable) report.profile_note = "profile kept despite CR above 0.10";
      }
      out << emit_report(report, format);
      return code;
    }
    if (hypotheses->parsed()) {
      Dataset dataset;
      if (!o.cases_file.empty()) {
        dataset = load_cases_file(o.cases_file);
      } else if (o.synthetic > 0) {
        dataset = synthetic_population({o.synthetic, o.seed, weights, o.noise});
      } else {
        fail(ErrorKind::usage, "hypotheses needs --cases or --synthetic");
      }
      out << emit_report(run_hypothesis_suite(dataset, weights), format);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::usage) err << app.help();
    return exit_code(e.kind());
  }
  return kExitUsage;
}

}  // namespace aivalue::cli
