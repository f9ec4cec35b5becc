#ifndef DSTARLAB_CLI_SUMMARY_H_
#define DSTARLAB_CLI_SUMMARY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dstarlab/netsim/scenario.h"
#include "dstarlab/netsim/simulator.h"

namespace dstarlab::cli {

// Nearest-rank RTT percentiles in microseconds; unset when no sample exists.
struct RttPercentiles {
  std::optional<uint64_t> p50_us;
  std::optional<uint64_t> p95_us;
  std::optional<uint64_t> p99_us;

  friend bool operator==(const RttPercentiles&, const RttPercentiles&) = default;
};

struct FlowSummary {
  uint32_t flow_id = 0;
  std::string algorithm;
  uint64_t start_us = 0;
  uint64_t base_rtt_us = 0;
  double mean_rate_bps = 0;
  uint64_t delivered_segments = 0;
  RttPercentiles rtt;            // samples after warmup
  RttPercentiles rtt_all;        // every sample
  uint64_t losses = 0;
  uint64_t retransmits = 0;
  uint64_t rtos = 0;

  friend bool operator==(const FlowSummary&, const FlowSummary&) = default;
};

struct SummaryRecord {
  std::string scenario_id;
  uint64_t seed = 0;
  uint64_t warmup_us = 0;
  uint64_t sim_duration_us = 0;
  std::vector<FlowSummary> flows;
  RttPercentiles rtt;
  RttPercentiles rtt_all;
  uint64_t losses = 0;
  uint64_t bottleneck_drops = 0;
  // Unset when no flow delivered anything.
  std::optional<double> jain_index;
  double utilization = 0;      // after warmup
  double utilization_all = 0;  // whole run

  friend bool operator==(const SummaryRecord&, const SummaryRecord&) = default;
};

SummaryRecord Summarize(const netsim::Scenario& scenario,
                        const netsim::RunResult& result);

// Pretty-printed JSON; durations in us, rates in bits/s, absent values null.
std::string SummaryToJson(const SummaryRecord& summary);
// Throws std::invalid_argument for malformed documents.
SummaryRecord SummaryFromJson(const std::string& text);

}  // namespace dstarlab::cli

#endif  // DSTARLAB_CLI_SUMMARY_H_
