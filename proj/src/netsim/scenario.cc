#include "dstarlab/netsim/scenario.h"

#include <array>
#include <sstream>
#include <utility>

namespace dstarlab::netsim {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 4> kAlgorithms = {{
    {Algorithm::kDstar, "dstar"},
    {Algorithm::kReno, "reno"},
    {Algorithm::kVegas, "vegas"},
    {Algorithm::kBbr, "bbr"},
}};

std::string Describe(const std::vector<FieldError>& errors) {
  std::ostringstream os;
  os << "invalid scenario:";
  for (const auto& e : errors) os << "\n  " << e.field << ": " << e.message;
  return os.str();
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  for (const auto& [a, name] : kAlgorithms) {
    if (a == algorithm) return name;
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (const auto& [a, n] : kAlgorithms) {
    if (n == name) return a;
  }
  return std::nullopt;
}

SegmentCount Scenario::BdpSegments(TimeUs base_rtt) const {
  // rate * rtt / (mss * 8), half-up.
  unsigned __int128 bits =
      static_cast<unsigned __int128>(bottleneck_rate_bps) * base_rtt.value();
  unsigned __int128 per_segment = static_cast<unsigned __int128>(mss_bytes) * 8 * 1000000;
  return Segments(static_cast<uint64_t>((bits * 2 + per_segment) / (per_segment * 2)));
}

ScenarioError::ScenarioError(std::vector<FieldError> errors)
    : std::runtime_error(Describe(errors)), errors_(std::move(errors)) {}

std::vector<FieldError> Validate(const Scenario& s) {
  std::vector<FieldError> errors;
  if (s.bottleneck_rate_bps == 0) {
    errors.push_back({"bottleneck_rate_bps", "must be positive"});
  } else if (s.mss_bytes > 0 &&
             static_cast<unsigned __int128>(s.mss_bytes) * 8 * 1000000 <
                 s.bottleneck_rate_bps) {
    errors.push_back({"bottleneck_rate_bps",
                      "serialization time of one segment must be at least 1 us"});
  }
  if (s.mss_bytes == 0) errors.push_back({"mss_bytes", "must be positive"});
  if (s.queue_capacity.value() < 1) {
    errors.push_back({"queue_capacity_segments", "must be at least 1"});
  }
  if (s.ecn_threshold && s.ecn_threshold->value() < 1) {
    errors.push_back({"ecn_threshold_segments", "must be at least 1"});
  }
  if (s.sim_duration.value() == 0) {
    errors.push_back({"sim_duration_us", "must be positive"});
  }
  if (s.queue_sample_interval.value() == 0) {
    errors.push_back({"queue_sample_interval_us", "must be positive"});
  }
  if (s.dstar.slow_start_exit_rounds < 1) {
    errors.push_back({"dstar.slow_start_exit_rounds", "must be at least 1"});
  }
  if (s.dstar.min_cwnd.value() < 1) {
    errors.push_back({"dstar.min_cwnd_segments", "must be at least 1"});
  }
  for (size_t i = 0; i < s.flows.size(); ++i) {
    const FlowSpec& f = s.flows[i];
    std::string prefix = "flows[" + std::to_string(i) + "].";
    if (f.prop_delay_fwd.value() == 0 && f.prop_delay_rev.value() == 0) {
      errors.push_back({prefix + "base_rtt_us", "propagation delay must be positive"});
    }
    if (f.duration && f.duration->value() == 0) {
      errors.push_back({prefix + "duration_us", "must be positive"});
    }
  }
  return errors;
}

void ValidateOrThrow(const Scenario& scenario) {
  auto errors = Validate(scenario);
  if (!errors.empty()) throw ScenarioError(std::move(errors));
}

}  // namespace dstarlab::netsim
