// Copyright 2026 The taxlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "taxlab/experiment.hpp"
#include "taxlab/json_io.hpp"
#include "taxlab/report.hpp"

namespace taxlab {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("taxlab_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

void Spit(const fs::path& p, const std::string& bytes) {
  std::ofstream f(p, std::ios::binary);
  f << bytes;
}

// Every regular file under dir, keyed by relative path.
std::map<std::string, std::string> Tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = Slurp(e.path());
  }
  return out;
}

// ----- json_io -----

TEST(JsonIoTest, ValuationRoundTrip) {
  const Valuation v(2, {0, Rat(1, 2), 2, Rat(5, 2)});
  const Json j = ValuationToJson(v);
  EXPECT_EQ(j["values"]["1"], "1/2");
  EXPECT_EQ(ValuationFromJson(j).table(), v.table());
  EXPECT_EQ(ValuationFromJson(Json::parse(j.dump())).table(), v.table());
}

TEST(JsonIoTest, RejectsMalformedTables) {
  EXPECT_THROW(ValuationFromJson(Json::parse(R"({"m": 1, "values": {"0": "0"}})")),
               DomainError);
  EXPECT_THROW(ValuationFromJson(Json::parse(R"({"m": 1, "values": {"0": 0, "x": 1}})")),
               DomainError);
  EXPECT_THROW(ValuationFromJson(Json::parse(R"({"m": 1, "values": {"0": 0, "2": 1}})")),
               DomainError);
  EXPECT_THROW(ValuationFromJson(Json::parse(R"({"m": 1, "values": {"0": 0, "1": "inf"}})")),
               DomainError);
  EXPECT_THROW(ValuationFromJson(Json::parse(R"({"values": {"0": 0}})")), DomainError);
  EXPECT_THROW(ValuationFromJson(Json::parse(R"({"m": 1, "values": {"0": 0, "1": true}})")),
               DomainError);
}

TEST(JsonIoTest, ClausesBuildXos) {
  const Valuation v = ValuationFromJson(Json::parse(R"({"m": 2, "clauses": [[1, 2], [3, 0]]})"));
  EXPECT_EQ(v[Bundle(1)], Rat(3));
  EXPECT_EQ(v[Bundle(2)], Rat(2));
  EXPECT_EQ(v[Bundle(3)], Rat(3));
}

TEST(JsonIoTest, MenuAndMinAffineRoundTrip) {
  const Menu menu(2, {0, 1, Rat::Infinity(), 3});
  EXPECT_EQ(MenuFromJson(MenuToJson(menu)), menu);
  MinAffineMenu ma;
  ma.m = 2;
  ma.vectors = {{1, Rat(3, 2)}};
  ma.offsets = {Rat(1, 4)};
  ma.exceptions[Bundle(3)] = 2;
  const MinAffineMenu back = MinAffineFromJson(MinAffineToJson(ma));
  EXPECT_EQ(back.vectors, ma.vectors);
  EXPECT_EQ(back.offsets, ma.offsets);
  EXPECT_EQ(back.exceptions, ma.exceptions);
  EXPECT_THROW(MinAffineFromJson(Json::parse(R"({"m": 2, "exceptions": {"9": 1}})")),
               DomainError);
}

TEST(JsonIoTest, DisjointnessRoundTrip) {
  const Json j = Json::parse(
      R"({"n": 2, "l": 3, "z": 1, "allowed": [["100", "010"], ["100", "001"]],
          "inputs": ["100", "100"]})");
  const ZDisjointnessInstance inst = DisjointnessFromJson(j);
  EXPECT_EQ(DisjointnessToJson(inst), j);
  EXPECT_TRUE(solve_z_disjointness(inst).intersect);
}

// ----- report -----

ComplexityReport Row(const std::string& name, int m, int n, int tax) {
  ComplexityReport r;
  r.mechanism = name;
  r.m = m;
  r.n = n;
  r.tax = tax;
  r.cc = tax + 1;
  return r;
}

TEST(ReportTest, OneReportIsHeaderPlusRow) {
  EXPECT_EQ(ReportCsv({Row("a", 2, 2, 1)}),
            "mechanism,m,n,tax,cc,price,tie,mc,val,dem,d,valid\n"
            "a,2,2,1,2,0,0,0,0,0,0,true\n");
}

TEST(ReportTest, RowsSortByMechanismThenSize) {
  const std::string csv =
      ReportCsv({Row("b", 2, 2, 0), Row("a", 4, 2, 0), Row("a", 2, 3, 0), Row("a", 2, 2, 0)});
  EXPECT_EQ(csv,
            "mechanism,m,n,tax,cc,price,tie,mc,val,dem,d,valid\n"
            "a,2,2,0,1,0,0,0,0,0,0,true\n"
            "a,2,3,0,1,0,0,0,0,0,0,true\n"
            "a,4,2,0,1,0,0,0,0,0,0,true\n"
            "b,2,2,0,1,0,0,0,0,0,0,true\n");
}

TEST(ReportTest, QuotesLabelsWithCommas) {
  EXPECT_EQ(CsvField("p(1,2)"), "\"p(1,2)\"");
  EXPECT_EQ(CsvField("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(CsvField("a,\"b\""), "\"a,\"\"b\"\"\"");
  EXPECT_EQ(CsvField("plain"), "plain");
}

TEST(ReportTest, SameReportsGiveSameBytes) {
  const fs::path a = TempDir("emit_a"), b = TempDir("emit_b");
  const std::vector<ComplexityReport> reps = {Row("z", 2, 2, 1), Row("y", 3, 2, 2)};
  emit_report(reps, a);
  emit_report(reps, b);
  EXPECT_EQ(Tree(a), Tree(b));
  const Json j = Json::parse(Slurp(a / "report.json"));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["mechanism"], "y");
  EXPECT_EQ(Slurp(a / "report.json").back(), '\n');
}

TEST(ReportTest, Errors) {
  EXPECT_THROW(emit_report({}, TempDir("empty")), ContractError);
  const fs::path dir = TempDir("blocked");
  Spit(dir / "file", "x");
  EXPECT_THROW(emit_report({Row("a", 2, 2, 1)}, dir / "file" / "sub"), IoError);
}

// ----- config -----

TEST(ConfigTest, ParsesDefaultsAndOptions) {
  const ExperimentConfig cfg = ParseExperimentConfig(Json::parse(
      R"({"mechanism": {"id": "warmup_tightness", "params": {"c": 3}}, "suites": ["measure"],
          "seed": 9, "jobs": 2, "options": {"verify-menu": {"samples": 5}}})"),
      "/base");
  ASSERT_EQ(cfg.mechanisms.size(), 1u);
  EXPECT_EQ(cfg.mechanisms[0].spec.label, "warmup_tightness(c=3)");
  EXPECT_EQ(cfg.mechanisms[0].catalog.size(0), 8u);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.jobs, 2);
  EXPECT_EQ(cfg.out, fs::path("/base/out"));
  EXPECT_EQ(cfg.Option("verify-menu", "samples", 1), 5);
  EXPECT_EQ(cfg.Option("disjointness", "instances", 7), 7);
}

TEST(ConfigTest, LibraryFilter) {
  const ExperimentConfig cfg = ParseExperimentConfig(
      Json::parse(R"({"mechanism": {"id": "library", "params": {"m": 4}}})"));
  EXPECT_GT(cfg.mechanisms.size(), 3u);
  for (const auto& em : cfg.mechanisms) EXPECT_EQ(em.spec.m, 4) << em.spec.label;
}

TEST(ConfigTest, RejectsInvalidConfigs) {
  const std::vector<std::string> bad = {
      R"([])",
      R"({"suites": []})",
      R"({"mechanism": "warmup_tightness", "colour": 1})",
      R"({"mechanism": "no_such_mechanism"})",
      R"({"mechanism": "warmup_tightness", "suites": ["bogus"]})",
      R"({"mechanism": "warmup_tightness", "options": {"bogus": {}}})",
      R"({"mechanism": "warmup_tightness", "jobs": 0})",
      R"({"mechanism": "warmup_tightness", "seed": "x"})",
      R"({"mechanism": "library", "catalogs": []})",
      R"({"mechanism": {"id": "library", "params": {"m": 99}}})",
      // Wrong player count.
      R"({"mechanism": "warmup_tightness",
          "catalogs": [[{"m": 2, "values": {"0": 0, "1": 1, "2": 0, "3": 1}}]]})",
      // Item count disagrees with the mechanism.
      R"({"mechanism": "warmup_tightness",
          "catalogs": [[{"m": 1, "values": {"0": 0, "1": 1}}],
                       [{"m": 1, "values": {"0": 0, "1": 1}}]]})",
      // Duplicate valuation.
      R"({"mechanism": "warmup_tightness",
          "catalogs": [[{"m": 2, "values": {"0": 0, "1": 1, "2": 0, "3": 1}},
                        {"m": 2, "values": {"0": 0, "1": 1, "2": 0, "3": 1}}],
                       [{"m": 2, "values": {"0": 0, "1": 1, "2": 0, "3": 1}}]]})",
      // Missing file.
      R"({"mechanism": "warmup_tightness", "catalogs": ["nope.json", "nope.json"]})",
  };
  for (const std::string& text : bad) {
    EXPECT_THROW(ParseExperimentConfig(Json::parse(text), TempDir("bad")), ConfigError) << text;
  }
}

TEST(ConfigTest, RejectsOutOfDomainTypes) {
  // The gadget's first player values at most one half-size bundle at 1/4.
  EXPECT_THROW(ParseExperimentConfig(Json::parse(R"({"mechanism": {"id": "mt_gadget"},
      "catalogs": [[{"m": 4, "clauses": [["1/8", "1/8", "1/8", "1/8"]]}],
                   [{"m": 4, "clauses": [[1, 0, 0, 0]]}]]})")),
               ConfigError);
}

TEST(ConfigTest, LoadsCatalogFilesRelativeToConfig) {
  const fs::path dir = TempDir("files");
  fs::create_directories(dir / "cat");
  Spit(dir / "cat" / "a.json", R"([{"m": 2, "values": {"0": 0, "1": 1, "2": 1, "3": 2}}])");
  Spit(dir / "cat" / "b.json",
       R"({"valuations": [{"m": 2, "values": {"0": 0, "1": 3, "2": 0, "3": 3}}]})");
  Spit(dir / "cfg.json", R"({"mechanism": "warmup_tightness",
                             "catalogs": ["cat/a.json", "cat/b.json"], "out": "res"})");
  const ExperimentConfig cfg = LoadExperimentConfig(dir / "cfg.json");
  EXPECT_EQ(cfg.mechanisms[0].catalog.player(1)[0][Bundle(1)], Rat(3));
  EXPECT_EQ(cfg.out, dir / "res");
  Spit(dir / "broken.json", "{");
  EXPECT_THROW(LoadExperimentConfig(dir / "broken.json"), ConfigError);
  EXPECT_THROW(LoadExperimentConfig(dir / "absent.json"), ConfigError);
}

// ----- run_experiment -----

ExperimentConfig WarmupConfig(const fs::path& out, std::vector<std::string> suites) {
  ExperimentConfig cfg = ParseExperimentConfig(
      Json::parse(R"({"mechanism": {"id": "warmup_tightness", "params": {"c": 2}}})"));
  cfg.suites = std::move(suites);
  cfg.out = out;
  cfg.seed = 5;
  return cfg;
}

TEST(RunExperimentTest, EmptySuiteListWritesNothing) {
  const fs::path out = TempDir("none") / "out";
  std::ostringstream log;
  const ExperimentResult r = run_experiment(WarmupConfig(out, {}), log);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.artifacts.empty());
  EXPECT_FALSE(fs::exists(out));
}

TEST(RunExperimentTest, MeasureWarmupRow) {
  const fs::path out = TempDir("measure");
  std::ostringstream log;
  const ExperimentResult r = run_experiment(WarmupConfig(out, {"measure"}), log);
  EXPECT_EQ(r.exit_code, 0);
  const std::string csv = Slurp(out / "report.csv");
  EXPECT_NE(csv.find("\nwarmup_tightness(c=2),2,2,2,3,"), std::string::npos) << csv;
}

TEST(RunExperimentTest, TheoremCheckLines) {
  const fs::path out = TempDir("theorems");
  ExperimentConfig cfg = ParseExperimentConfig(
      Json::parse(R"({"mechanism": {"id": "library", "params": {"m": 4}}})"));
  cfg.suites = {"theorem-check"};
  cfg.out = out;
  std::ostringstream log;
  EXPECT_EQ(run_experiment(cfg, log).exit_code, 0) << log.str();
  const std::string text = Slurp(out / "theorem_check.txt");
  EXPECT_NE(text.find("tax<=cc: PASS"), std::string::npos);
  EXPECT_NE(text.find("mc<=val+2: PASS"), std::string::npos);
  EXPECT_EQ(text.find("FAIL"), std::string::npos);
}

TEST(RunExperimentTest, ArtifactsAreByteStable) {
  const std::vector<std::string> suites = {"measure",      "reconstruct-comm", "verify-menu",
                                           "disjointness", "transform",        "simultaneous",
                                           "theorem-check"};
  const fs::path a = TempDir("stable_a"), b = TempDir("stable_b"), c = TempDir("stable_c");
  std::ostringstream log;
  ExperimentConfig cfg = WarmupConfig(a, suites);
  ASSERT_EQ(run_experiment(cfg, log).exit_code, 0) << log.str();
  cfg.out = b;
  cfg.jobs = 4;
  ASSERT_EQ(run_experiment(cfg, log).exit_code, 0);
  EXPECT_EQ(Tree(a), Tree(b));
  cfg.out = c;
  cfg.seed = 6;
  ASSERT_EQ(run_experiment(cfg, log).exit_code, 0);
  EXPECT_NE(Slurp(a / "disjointness.csv"), Slurp(c / "disjointness.csv"));
}

TEST(RunExperimentTest, UntruthfulMechanismFailsWithExitOne) {
  ExperimentConfig cfg = WarmupConfig(TempDir("untruthful"), {"measure", "theorem-check"});
  MechanismSpec& spec = cfg.mechanisms[0].spec;
  spec.label = "pay_your_bid";
  spec.program = [](Execution& ex) {
    Outcome out = EmptyOutcome(2);
    const Rat bid = ex.own(1)[Bundle::Single(0)];
    if (ex.SendBit(1, bid >= 2)) {
      out.allocation[1] = Bundle::Single(0);
      out.payments[1] = Min(bid, Rat(4));
    }
    return out;
  };
  std::ostringstream log;
  const ExperimentResult r = run_experiment(cfg, log);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(log.str().find("FAIL taxation pay_your_bid witness="), std::string::npos) << log.str();
  EXPECT_NE(log.str().find("taxation: FAIL"), std::string::npos);
}

// ----- command line -----

int RunCli(const std::string& args) {
  const std::string cmd = std::string(TAXLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  const fs::path dir = TempDir("cli");
  Spit(dir / "ok.json", R"({"mechanism": "warmup_tightness", "suites": ["measure"]})");
  Spit(dir / "empty.json", R"({"mechanism": "warmup_tightness", "suites": []})");
  Spit(dir / "bad.json", R"({"mechanism": "warmup_tightness", "suites": ["nope"]})");
  Spit(dir / "blocker", "x");
  const std::string ok = (dir / "ok.json").string();
  EXPECT_EQ(RunCli("validate --config " + ok), 0);
  EXPECT_EQ(RunCli("run --config " + ok + " --out " + (dir / "res").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "res" / "report.csv"));
  EXPECT_EQ(RunCli("run --config " + (dir / "empty.json").string()), 0);
  EXPECT_FALSE(fs::exists(dir / "out"));
  EXPECT_EQ(RunCli("run --config " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(RunCli("validate --config " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(RunCli("run --config " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(RunCli("run --config " + ok + " --out " + (dir / "blocker" / "x").string()), 2);
  EXPECT_EQ(RunCli("run --config " + ok + " --jobs 0"), 2);
  EXPECT_EQ(RunCli("run"), 2);
  EXPECT_EQ(RunCli("frobnicate"), 2);
  EXPECT_EQ(RunCli("--help"), 0);
}

TEST(CliTest, SeedOverrideIsDeterministic) {
  const fs::path dir = TempDir("cli_seed");
  Spit(dir / "cfg.json", R"({"mechanism": "warmup_tightness", "suites": ["disjointness"],
                             "options": {"disjointness": {"instances": 30}}})");
  const std::string cfg = (dir / "cfg.json").string();
  ASSERT_EQ(RunCli("run --config " + cfg + " --seed 4 --out " + (dir / "a").string()), 0);
  ASSERT_EQ(RunCli("run --config " + cfg + " --seed 4 --out " + (dir / "b").string()), 0);
  EXPECT_EQ(Tree(dir / "a"), Tree(dir / "b"));
}

}  // namespace
}  // namespace taxlab
