#ifndef DSTARLAB_NETSIM_SCENARIO_H_
#define DSTARLAB_NETSIM_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dstarlab/core/units.h"
#include "dstarlab/dstar/dstar.h"

namespace dstarlab::netsim {

enum class Algorithm { kDstar, kReno, kVegas, kBbr };

std::string_view AlgorithmName(Algorithm algorithm);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);

struct FlowSpec {
  Algorithm algorithm = Algorithm::kDstar;
  TimeUs start;
  // Sending stops at start + duration; std::nullopt means until the end.
  std::optional<TimeUs> duration;
  TimeUs prop_delay_fwd;
  TimeUs prop_delay_rev;

  TimeUs base_rtt() const { return prop_delay_fwd + prop_delay_rev; }
};

struct Scenario {
  std::string id = "scenario";
  std::string description;
  uint64_t bottleneck_rate_bps = 0;
  uint32_t mss_bytes = 1500;
  SegmentCount queue_capacity;
  std::optional<SegmentCount> ecn_threshold;
  std::vector<FlowSpec> flows;
  TimeUs sim_duration;
  uint64_t seed = 1;
  // Each flow's start is delayed by a uniform draw in [0, start_jitter].
  TimeUs start_jitter;
  dstar::DstarConfig dstar;
  // Summary statistics ignore samples before this time.
  TimeUs warmup = Seconds(5);
  // Width of the bottleneck occupancy sampling bins.
  TimeUs queue_sample_interval = Milliseconds(10);

  // Serialization time of one segment in (possibly fractional) microseconds.
  double serialization_us() const {
    return static_cast<double>(mss_bytes) * 8.0 * 1e6 /
           static_cast<double>(bottleneck_rate_bps);
  }
  // Bottleneck capacity in segments per second.
  double bottleneck_pps() const {
    return static_cast<double>(bottleneck_rate_bps) / (mss_bytes * 8.0);
  }
  // Segments needed to fill the bottleneck for one round trip of base_rtt.
  SegmentCount BdpSegments(TimeUs base_rtt) const;
};

struct FieldError {
  std::string field;
  std::string message;
};

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<FieldError> errors);
  const std::vector<FieldError>& errors() const { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

// Empty when the scenario can be simulated.
std::vector<FieldError> Validate(const Scenario& scenario);

// Throws ScenarioError listing every problem.
void ValidateOrThrow(const Scenario& scenario);

}  // namespace dstarlab::netsim

#endif  // DSTARLAB_NETSIM_SCENARIO_H_
