#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "aivalue/dataset.hpp"
#include "aivalue/report.hpp"
#include "cli.hpp"

using namespace aivalue;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("aivalue_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

const char* kHeader =
    "id,label,entropy_reduction,efficiency_gain,cost_saving,decision_quality,error_probability,"
    "error_impact,correction_cost_ratio\n";

}  // namespace

TEST_CASE("validate-paper on the bundled table") {
  const auto r = run({"validate-paper"});
  CHECK(r.code == 0);
  CHECK(r.out.find("10/10 pass") != std::string::npos);
  CHECK(r.err.empty());
  const auto strict = run({"validate-paper", "--tolerance", "0", "--format", "json"});
  CHECK(strict.code == 0);
  const auto parsed = ordered_json::parse(strict.out).get<ValidationReport>();
  CHECK(parsed.all_pass());
}

TEST_CASE("score a zero case") {
  TempDir dir;
  const auto file = dir.write("zero.csv", std::string(kHeader) + "z,,0,0,0,0,0,0,0\n");
  const auto r = run({"score", "--case", file, "--format", "json"});
  CHECK(r.code == 0);
  const auto b = ordered_json::parse(r.out).get<ValueBreakdown>();
  CHECK(b.composite_value == 0.0);
  CHECK(b.verdict == Verdict::review);
}

TEST_CASE("breakeven from a case file") {
  TempDir dir;
  const auto file = dir.write("half.csv", std::string(kHeader) + "h,,0.5,0,0,0,0.2,2,0\n");
  const auto r = run({"breakeven", "--case", file});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.5") != std::string::npos);
  const auto j = run({"breakeven", "--case", file, "--format", "json"});
  CHECK(ordered_json::parse(j.out).get<BreakevenResult>().p_star == 0.5);
}

TEST_CASE("omitting --weights equals the default weights file") {
  TempDir dir;
  const auto file = dir.write("c.csv", std::string(kHeader) + "c,,0.7,0.45,0.3,1,0.12,6,0.2\n");
  const auto weights = dir.write("w.json", R"({"alpha":1,"beta":0.5,"gamma":0.3,"delta":0.2,"lambda":1})");
  for (const char* cmd : {"score", "breakeven"}) {
    const auto a = run({cmd, "--case", file, "--format", "json"});
    const auto b = run({cmd, "--case", file, "--weights", weights, "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  const auto sa = run({"sweep", "--case", file, "--weight", "lambda=0:2:5"});
  const auto sb = run({"sweep", "--case", file, "--weight", "lambda=0:2:5", "--weights", weights});
  CHECK(sa.out == sb.out);
}

TEST_CASE("every json output re-parses") {
  TempDir dir;
  const auto one = dir.write("c.csv", std::string(kHeader) + "c,,0.7,0.45,0.3,1,0.12,6,0.2\n");
  const auto many = dir.write("m.csv", std::string(kHeader) + "a,success,0.7,0.45,0.3,1,0.12,6,0.2\n"
                                                               "b,failure,0.1,0.1,0.1,1,0.4,8,1\n");
  const auto matrix = dir.write("m3.csv", "1,2,5\n1/2,1,3\n1/5,1/3,1\n");

  auto json_of = [](std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    const auto r = run(args);
    CHECK(r.code == 0);
    return ordered_json::parse(r.out);
  };
  const auto score = json_of({"score", "--case", one}).get<ValueBreakdown>();
  CHECK(emit_report(score, ReportFormat::json) == run({"score", "--case", one, "--format", "json"}).out);
  json_of({"batch", "--cases", many}).get<BatchReport>();
  json_of({"validate-paper"}).get<ValidationReport>();
  json_of({"sweep", "--case", one, "--weight", "lambda=0:2:3", "--weight", "alpha=1:2:2"}).get<SweepGrid>();
  json_of({"perturb", "--case", one, "--factor", "error_probability", "--multipliers", "1,1.5"})
      .get<PerturbationSeries>();
  json_of({"breakeven", "--case", one}).get<BreakevenResult>();
  json_of({"scan", "--case", one, "--probabilities", "0,0.5,1"}).get<ScanReport>();
  json_of({"entropy", "--before", "0.25,0.25,0.25,0.25", "--after", "1,0,0,0"}).get<EntropyComparison>();
  json_of({"ahp", "--matrix", matrix}).get<AhpReport>();
  json_of({"hypotheses", "--synthetic", "80", "--seed", "3"}).get<HypothesisReport>();
}

TEST_CASE("fault injection exit codes") {
  TempDir dir;
  CHECK(run({"validate-paper", "--no-such-flag"}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);
  const auto usage = run({"score"});
  CHECK(usage.code == cli::kExitUsage);
  CHECK(usage.err.find("--case") != std::string::npos);

  const auto bad = dir.write("bad.csv", std::string(kHeader) + "x,,0.1,0.1,0.1,1,1.5,2,0\n");
  const auto r3 = run({"score", "--case", bad});
  CHECK(r3.code == cli::kExitData);
  CHECK(r3.out.empty());
  CHECK(r3.err.find("error_probability") != std::string::npos);
  CHECK(run({"score", "--case", dir.write("missing_dir/none.csv", "")}).code == cli::kExitData);

  auto tampered = bundled_paper_dataset();
  tampered.cases[0].stored_value = 1.60;
  const auto tfile = dir.write("tampered.csv", emit_dataset(tampered, DataFormat::csv));
  const auto r1 = run({"validate-paper", "--cases", tfile});
  CHECK(r1.code == cli::kExitFailed);
  CHECK(r1.out.find("9/10 pass") != std::string::npos);

  const auto clean = dir.write("clean.csv", emit_dataset(bundled_paper_dataset(), DataFormat::csv));
  CHECK(run({"validate-paper", "--cases", clean, "--tolerance", "0"}).code == cli::kExitOk);
}

TEST_CASE("inconsistent ahp matrix") {
  TempDir dir;
  const auto m = dir.write("m5.csv",
                           "1,2,10/3,5,1\n1/2,1,5/3,5/2,8\n3/10,3/5,1,3/2,3/10\n"
                           "1/5,2/5,2/3,1,1/5\n1,1/8,10/3,5,1\n");
  const auto strict = run({"ahp", "--matrix", m});
  CHECK(strict.code == cli::kExitFailed);
  CHECK(strict.out.find("inconsistent") != std::string::npos);
  const auto loose = run({"ahp", "--matrix", m, "--override-consistency"});
  CHECK(loose.code == 0);
  CHECK(loose.out.find("profile: alpha 1") != std::string::npos);
}

TEST_CASE("component cases only sweep lambda") {
  TempDir dir;
  const auto c = dir.write("s1.csv", "id,label,positive_sum,risk_f,value_v,market_success_rate\nS1,success,1.86,0.32,1.54,0.92\n");
  const auto ok = run({"sweep", "--case", c, "--weight", "lambda=1:1:1"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "lambda,value\n1,1.54\n");
  CHECK(run({"sweep", "--case", c, "--weight", "alpha=0:1:2"}).code == cli::kExitData);
  CHECK(run({"breakeven", "--case", c}).code == cli::kExitData);
  CHECK(run({"sweep", "--case", c, "--weight", "lambda=0:1"}).code == cli::kExitUsage);
}

TEST_CASE("help exits cleanly") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("validate-paper") != std::string::npos);
}
