#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "stylemix/stylemix.hpp"
#include "support/oracles.hpp"
#include "support/run_cli.hpp"

using namespace stylemix;
using namespace stylemix::testing;
namespace fs = std::filesystem;

namespace {

const std::string kCli = STYLEMIX_CLI_PATH;
const fs::path kData = STYLEMIX_SAMPLES_DIR;

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("stylemix_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliResult run(const std::string &args) { return run_cli(kCli, args, dir_); }
  std::string data(const std::string &name) const { return "'" + (kData / name).string() + "'"; }
  std::string scratch(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

} // namespace

TEST_F(Cli, DistancesSquared) {
  const auto r = run("distances --catalog " + data("two_styles.csv"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["n"], 2);
  EXPECT_EQ(doc["entries"], (nlohmann::json{0.0, 25.0, 25.0, 0.0}));
  EXPECT_NE(r.err.find("n=2"), std::string::npos);
}

TEST_F(Cli, DistancesEuclideanCsvToFile) {
  const auto out = scratch("d.csv");
  const auto r = run("--format csv --output '" + out + "' distances --metric euclidean --catalog " +
                     data("two_styles.csv"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(slurp(out), "0,5\n5,0\n");
  EXPECT_NE(r.out.find("n=2"), std::string::npos);
}

TEST_F(Cli, RaggedCatalogExitsTwo) {
  const auto r = run("distances --catalog " + data("ragged.csv"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("DimensionMismatch"), std::string::npos);
}

TEST_F(Cli, MissingFileAndBadFlags) {
  EXPECT_EQ(run("distances --catalog /nonexistent/cat.csv").exit_code, 2);
  EXPECT_EQ(run("distances").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("distances --metric cosine --catalog " + data("two_styles.csv")).exit_code, 2);
  EXPECT_EQ(run("solve --mode fastest --instance " + data("line4.json")).exit_code, 2);
}

TEST_F(Cli, Variety) {
  const auto r = run("variety --catalog " + data("line4.csv") + " --styles p1,p4");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["MaxMean"], 4.5);
  EXPECT_EQ(doc["MaxSumSum"], 9.0);
  const auto csv = run("--format csv variety --measure MaxMin --catalog " + data("line4.csv") +
                       " --styles p1,p2,p4");
  EXPECT_EQ(csv.out, "measure,variety\nMaxMin,1\n");
  EXPECT_EQ(run("variety --catalog " + data("line4.csv") + " --styles p1,p9").exit_code, 2);
}

TEST_F(Cli, SolveExactLineOfFour) {
  const auto r = run("solve --mode exact --instance " + data("line4.json"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["status"], "optimal");
  EXPECT_DOUBLE_EQ(doc["objective"].get<double>(), 5.0);
  for (const char *key : {"per_store_variety", "x", "y", "iterations"})
    EXPECT_TRUE(doc.contains(key)) << key;
}

TEST_F(Cli, SolveHeuristicDeterministic) {
  const auto a = run("--seed 7 solve --mode heuristic --instance " + data("line4.json"));
  const auto b = run("--seed 7 solve --mode heuristic --instance " + data("line4.json"));
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["status"], "feasible_heuristic");
  EXPECT_DOUBLE_EQ(doc["objective"].get<double>(), 5.0);
}

TEST_F(Cli, SeedFromEnvironment) {
  const auto flag = run("--seed 3 experiment --kind linearity --sizes 2..4 --reps 5");
  const auto env = run_cli("/usr/bin/env", "STYLEMIX_SEED=3 '" + kCli +
                                               "' experiment --kind linearity --sizes 2..4 --reps 5",
                           dir_);
  ASSERT_EQ(flag.exit_code, 0);
  EXPECT_EQ(flag.out, env.out);
  EXPECT_NE(flag.out, run("experiment --kind linearity --sizes 2..4 --reps 5").out);
}

TEST_F(Cli, SolveRecordTimeAddsWallTime) {
  const auto r = run("solve --record-time --instance " + data("pair.json"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc.contains("wall_time_s"));
  EXPECT_DOUBLE_EQ(doc["objective"].get<double>(), 3.0);
}

TEST_F(Cli, InfeasibleExitsThreeWithCertificate) {
  const auto r = run("solve --instance " + data("short_supply.json"));
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.err.find("certificate"), std::string::npos);
  EXPECT_NE(r.err.find("global_supply"), std::string::npos);
  EXPECT_EQ(run("solve --mode heuristic --instance " + data("short_supply.json")).exit_code, 3);
}

TEST_F(Cli, InvalidInstanceExitsTwo) {
  const auto r = run("solve --instance " + data("bad_min.json"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("MinExceedsPlanned"), std::string::npos);
  EXPECT_EQ(run("export-lp --instance " + data("bad_min.json")).exit_code, 2);
}

TEST_F(Cli, BudgetExceededExitsFour) {
  const auto r = run("solve --mode exact --time-budget=-1 --instance " + data("line4.json"));
  EXPECT_EQ(r.exit_code, 4);
}

TEST_F(Cli, ExportLpTwoByOne) {
  const auto out = scratch("pair.lp");
  const auto r = run("--output '" + out + "' export-lp --instance " + data("pair.json"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto lp = parse_lp(slurp(out));
  EXPECT_EQ(lp.binaries.size(), 2u);
  EXPECT_EQ(lp.generals.size(), 2u);
  EXPECT_EQ(lp.bounds.size(), 5u);
  EXPECT_EQ(lp.rows.size(), 2u + 2u + 4u + 1u + 7u + 4u + 1u);
  const auto again = scratch("pair2.lp");
  run("--output '" + again + "' export-lp --instance " + data("pair.json"));
  EXPECT_EQ(slurp(out), slurp(again));
}

TEST_F(Cli, CounterexamplesExperiment) {
  const auto r = run("experiment --kind counterexamples");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 6u);
  EXPECT_EQ(doc[0]["measure"], "MaxMinSum");
  EXPECT_EQ(doc[0]["verdict"], "violated");
  EXPECT_NEAR(doc[0]["after"].get<double>(), std::sqrt(3.0), 1e-9);
  EXPECT_EQ(doc[1]["before"], 4.0);
  EXPECT_EQ(doc[1]["after"], 3.0);
}

TEST_F(Cli, LinearityCsvRowCount) {
  const auto r = run("--seed 1 experiment --kind linearity --sizes 2..20 --reps 1000");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  std::size_t lines = 0;
  for (char c : r.out)
    lines += c == '\n';
  EXPECT_EQ(lines, 1u + 5u * 19u);
  EXPECT_EQ(r.out.rfind("measure,k,mean,std\n", 0), 0u);
}

TEST_F(Cli, LinearityConfigErrors) {
  EXPECT_EQ(run("experiment --kind linearity --sizes 2..40").exit_code, 2);
  EXPECT_EQ(run("experiment --kind linearity --sizes two").exit_code, 2);
  EXPECT_EQ(run("experiment --kind linearity --reps 0").exit_code, 2);
  EXPECT_EQ(run("experiment --kind sideways").exit_code, 2);
}

TEST_F(Cli, BaselineExperiment) {
  const auto r = run("experiment --kind baseline");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_GE(doc["improvement_pct"].get<double>(), 0.0);
  const auto inst = run("experiment --kind baseline --instance " + data("line4.json"));
  ASSERT_EQ(inst.exit_code, 0) << inst.err;
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(inst.out)["optimized_objective"].get<double>(), 5.0);
}

TEST_F(Cli, OutputsRoundTripThroughLibraryParsers) {
  const auto out = scratch("d.json");
  ASSERT_EQ(run("--output '" + out + "' distances --catalog " + data("line4.csv")).exit_code, 0);
  const auto d = distance_matrix_from_json(nlohmann::json::parse(slurp(out)));
  EXPECT_EQ(d(0, 3), 9.0);
}
