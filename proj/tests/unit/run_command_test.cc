#include "dstarlab/cli/run_command.h"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dstarlab/cli/summary.h"
#include "dstarlab/cli/trace_csv.h"

namespace dstarlab::cli {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

class RunCommandTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("dstarlab_run_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
    scenario_ = root_ / "tiny.json";
    std::ofstream(scenario_) << R"({
      "id": "tiny", "bottleneck_rate_bps": 10000000, "sim_duration_us": 500000,
      "start_jitter_us": 3000, "warmup_us": 100000,
      "flows": [{"algorithm": "dstar", "base_rtt_us": 10000},
                {"algorithm": "vegas", "base_rtt_us": 14000}]})";
  }
  void TearDown() override { fs::remove_all(root_); }

  int Cli(std::vector<std::string> args) {
    std::vector<const char*> argv = {"dstarlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return RunCli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  fs::path root_;
  fs::path scenario_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(RunCommandTest, WritesTraceAndSummary) {
  fs::path out = root_ / "out";
  EXPECT_EQ(Cli({"run", scenario_.string(), "--out", out.string()}), kExitOk) << err_.str();
  fs::path run = out / "tiny" / "run-0";
  std::string csv = Slurp(run / "trace.csv");
  EXPECT_EQ(csv.substr(0, kTraceCsvHeader.size()), kTraceCsvHeader);
  EXPECT_FALSE(ParseTraceCsv(csv).empty());
  SummaryRecord s = SummaryFromJson(Slurp(run / "summary.json"));
  EXPECT_EQ(s.scenario_id, "tiny");
  EXPECT_EQ(s.flows.size(), 2u);
  EXPECT_NE(out_.str().find("tiny run-0"), std::string::npos);
  size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(out)) files += e.is_regular_file();
  EXPECT_EQ(files, 2u);
}

TEST_F(RunCommandTest, FixedSeedRepeatsAreIdentical) {
  fs::path out = root_ / "out";
  EXPECT_EQ(Cli({"run", scenario_.string(), "--out", out.string(), "--repeat", "3",
                 "--seed", "7", "--jobs", "2"}),
            kExitOk)
      << err_.str();
  SummaryRecord first = SummaryFromJson(Slurp(out / "tiny" / "run-0" / "summary.json"));
  EXPECT_EQ(first.seed, 7u);
  for (int k = 1; k < 3; ++k) {
    fs::path run = out / "tiny" / ("run-" + std::to_string(k));
    EXPECT_EQ(SummaryFromJson(Slurp(run / "summary.json")), first);
    EXPECT_EQ(Slurp(run / "trace.csv"), Slurp(out / "tiny" / "run-0" / "trace.csv"));
  }
}

TEST_F(RunCommandTest, RepeatsWithoutSeedAdvance) {
  fs::path out = root_ / "out";
  EXPECT_EQ(Cli({"run", scenario_.string(), "--out", out.string(), "--repeat", "2",
                 "--no-csv"}),
            kExitOk);
  EXPECT_EQ(SummaryFromJson(Slurp(out / "tiny" / "run-0" / "summary.json")).seed, 1u);
  EXPECT_EQ(SummaryFromJson(Slurp(out / "tiny" / "run-1" / "summary.json")).seed, 2u);
  EXPECT_FALSE(fs::exists(out / "tiny" / "run-0" / "trace.csv"));
}

TEST_F(RunCommandTest, ExitCodes) {
  fs::path out = root_ / "out";
  EXPECT_EQ(Cli({"--help"}), kExitOk);
  EXPECT_EQ(Cli({}), kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}), kExitUsage);
  EXPECT_EQ(Cli({"run", scenario_.string(), "--out", out.string(), "--repeat", "0"}),
            kExitUsage);
  EXPECT_EQ(Cli({"run", (root_ / "missing.json").string(), "--out", out.string()}), kExitIo);

  fs::path bad = root_ / "bad.json";
  std::ofstream(bad) << R"({"bottleneck_rate_bps": 0, "sim_duration_us": 1,
                           "flows": [{"algorithm": "dstar", "base_rtt_us": 10}]})";
  EXPECT_EQ(Cli({"run", bad.string(), "--out", out.string()}), kExitValidation);
  EXPECT_NE(err_.str().find("bottleneck_rate_bps"), std::string::npos);
  EXPECT_EQ(Cli({"validate", bad.string()}), kExitValidation);
  EXPECT_FALSE(fs::exists(out));

  fs::path blocker = root_ / "file";
  std::ofstream(blocker) << "x";
  EXPECT_EQ(Cli({"run", scenario_.string(), "--out", (blocker / "sub").string()}), kExitIo);
}

TEST_F(RunCommandTest, ValidateAndList) {
  EXPECT_EQ(Cli({"validate", scenario_.string()}), kExitOk);
  EXPECT_NE(out_.str().find("tiny"), std::string::npos);
  EXPECT_EQ(Cli({"validate", "netem_1flow"}), kExitOk);
  EXPECT_NE(out_.str().find("queue 1250 seg"), std::string::npos);
  EXPECT_EQ(Cli({"list-scenarios"}), kExitOk);
  EXPECT_NE(out_.str().find("netem_32\t32 flows\t"), std::string::npos);
}

TEST_F(RunCommandTest, LeavesNoTemporaryFiles) {
  fs::path out = root_ / "out";
  EXPECT_EQ(Cli({"run", scenario_.string(), "--out", out.string()}), kExitOk);
  for (const auto& e : fs::recursive_directory_iterator(out)) {
    if (!e.is_regular_file()) continue;
    std::string name = e.path().filename().string();
    EXPECT_TRUE(name == "trace.csv" || name == "summary.json") << name;
  }
}

}  // namespace
}  // namespace dstarlab::cli
