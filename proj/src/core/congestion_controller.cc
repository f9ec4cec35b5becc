#include "dstarlab/core/congestion_controller.h"

#include <array>
#include <utility>

namespace dstarlab {

namespace {

constexpr std::array<std::pair<ModeTag, std::string_view>, 10> kModeNames = {{
    {ModeTag::kSlowStart, "SLOW_START"},
    {ModeTag::kGain1, "GAIN_1"},
    {ModeTag::kGain2, "GAIN_2"},
    {ModeTag::kDrain, "DRAIN"},
    {ModeTag::kAvoidance, "AVOIDANCE"},
    {ModeTag::kRecovery, "RECOVERY"},
    {ModeTag::kStartup, "STARTUP"},
    {ModeTag::kProbeBw, "PROBE_BW"},
    {ModeTag::kProbeRtt, "PROBE_RTT"},
    {ModeTag::kFixed, "FIXED"},
}};

}  // namespace

std::string_view ModeName(ModeTag mode) {
  for (const auto& [tag, name] : kModeNames) {
    if (tag == mode) return name;
  }
  return "UNKNOWN";
}

std::optional<ModeTag> ParseModeName(std::string_view name) {
  for (const auto& [tag, n] : kModeNames) {
    if (n == name) return tag;
  }
  return std::nullopt;
}

}  // namespace dstarlab
