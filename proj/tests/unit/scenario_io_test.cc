#include "dstarlab/cli/scenario_io.h"

#include <gtest/gtest.h>

#include <fstream>

#include "support/scenarios.h"

namespace dstarlab::cli {
namespace {

std::string ErrorFields(std::string_view text) {
  try {
    ParseScenario(text);
  } catch (const netsim::ScenarioError& e) {
    std::string fields;
    for (const auto& f : e.errors()) fields += f.field + ";";
    return fields;
  }
  return "";
}

constexpr char kMinimal[] = R"({
  "bottleneck_rate_bps": 100000000,
  "sim_duration_us": 1000000,
  "flows": [{"algorithm": "dstar", "base_rtt_us": 20000}]
})";

TEST(ScenarioIoTest, BundledSingleFlow) {
  netsim::Scenario s = testing::Bundled("netem_1flow");
  EXPECT_EQ(s.id, "netem_1flow");
  EXPECT_EQ(s.bottleneck_rate_bps, 500000000u);
  EXPECT_EQ(s.queue_capacity, Segments(1250));
  ASSERT_EQ(s.flows.size(), 1u);
  EXPECT_EQ(s.flows[0].algorithm, netsim::Algorithm::kDstar);
  EXPECT_EQ(s.flows[0].base_rtt(), Microseconds(30000));
}

TEST(ScenarioIoTest, EveryBundledScenarioLoads) {
  auto files = ListScenarios(testing::BundledScenarioDir());
  EXPECT_GE(files.size(), 12u);
  for (const auto& f : files) {
    netsim::Scenario s = LoadScenario(f);
    EXPECT_EQ(s.id, f.stem().string());
    EXPECT_FALSE(s.description.empty()) << f;
  }
}

TEST(ScenarioIoTest, MinimalFileDefaults) {
  netsim::Scenario s = ParseScenario(kMinimal);
  EXPECT_EQ(s.mss_bytes, 1500u);
  EXPECT_EQ(s.seed, 1u);
  EXPECT_EQ(s.warmup, Seconds(5));
  // One BDP at 100 Mbps and 20 ms.
  EXPECT_EQ(s.queue_capacity, Segments(167));
  EXPECT_EQ(s.flows[0].prop_delay_fwd, Microseconds(10000));
  EXPECT_EQ(s.flows[0].prop_delay_rev, Microseconds(10000));
  EXPECT_EQ(s.dstar.min_rtt_timeout, Seconds(10));
  EXPECT_FALSE(s.ecn_threshold.has_value());
}

TEST(ScenarioIoTest, CountExpandsFlows) {
  netsim::Scenario s = ParseScenario(R"({
    "bottleneck_rate_bps": 1000000, "sim_duration_us": 10, "base_rtt_us": 3001,
    "queue_capacity_bytes": 15000,
    "flows": [{"algorithm": "reno", "count": 3, "start_us": 7}]})");
  ASSERT_EQ(s.flows.size(), 3u);
  EXPECT_EQ(s.flows[2].start, Microseconds(7));
  EXPECT_EQ(s.flows[2].prop_delay_fwd, Microseconds(1500));
  EXPECT_EQ(s.flows[2].prop_delay_rev, Microseconds(1501));
  EXPECT_EQ(s.queue_capacity, Segments(10));
}

TEST(ScenarioIoTest, ZeroRateNamesField) {
  EXPECT_EQ(ErrorFields(R"({"bottleneck_rate_bps": 0, "sim_duration_us": 1,
                            "queue_capacity_segments": 10, "flows": []})"),
            "bottleneck_rate_bps;");
}

TEST(ScenarioIoTest, RejectsUnknownAndMalformedKeys) {
  EXPECT_EQ(ErrorFields(R"({"bottleneck_rate_bps": 1000000, "sim_duration_us": 1,
                            "colour": 1, "queue_capacity_segments": 10, "flows": []})"),
            "colour;");
  EXPECT_EQ(ErrorFields(R"({"bottleneck_rate_bps": 1000000, "sim_duration_us": 1,
                            "flows": [{"algorithm": "dstar", "base_rtt_us": 10},
                                      {"algorithm": "cubic", "base_rtt_us": 10}]})"),
            "flows[1].algorithm;");
  EXPECT_NE(ErrorFields(R"({"bottleneck_rate_bps": "fast", "sim_duration_us": 1,
                            "flows": []})"),
            "");
  EXPECT_NE(ErrorFields("{not json"), "");
  EXPECT_NE(ErrorFields(R"({"sim_duration_us": 1, "flows": []})").find("bottleneck_rate_bps"),
            std::string::npos);
}

TEST(ScenarioIoTest, RejectsBothQueueForms) {
  EXPECT_NE(ErrorFields(R"({"bottleneck_rate_bps": 1000000, "sim_duration_us": 1,
                            "queue_capacity_segments": 4, "queue_capacity_bytes": 6000,
                            "flows": []})"),
            "");
}

TEST(ScenarioIoTest, MissingFileIsIoError) {
  EXPECT_THROW(LoadScenario("/nonexistent/dir/x.json"), IoError);
}

TEST(ScenarioIoTest, ResolvesBundledNames) {
  auto dir = testing::BundledScenarioDir();
  EXPECT_EQ(ResolveScenario("netem_32", dir), dir / "netem_32.json");
  EXPECT_EQ(ResolveScenario("netem_32.json", dir), dir / "netem_32.json");
}

TEST(ScenarioIoTest, AtomicWriteReplacesFile) {
  auto dir = std::filesystem::temp_directory_path() / "dstarlab_atomic_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "out.txt";
  WriteFileAtomic(path, "first");
  WriteFileAtomic(path, [](std::ostream& os) { os << "second"; });
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text, "second");
  size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1u);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(WriteFileAtomic("/nonexistent/dir/x.txt", "x"), IoError);
}

}  // namespace
}  // namespace dstarlab::cli
