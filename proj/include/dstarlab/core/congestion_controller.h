#ifndef DSTARLAB_CORE_CONGESTION_CONTROLLER_H_
#define DSTARLAB_CORE_CONGESTION_CONTROLLER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "dstarlab/core/estimators.h"
#include "dstarlab/core/units.h"

namespace dstarlab {

// Operating mode reported in traces. Shared across algorithms so traces from
// different controllers use one vocabulary.
enum class ModeTag : uint8_t {
  kSlowStart,
  kGain1,
  kGain2,
  kDrain,
  kAvoidance,
  kRecovery,
  kStartup,
  kProbeBw,
  kProbeRtt,
  kFixed,
};

std::string_view ModeName(ModeTag mode);
std::optional<ModeTag> ParseModeName(std::string_view name);

// A segment the sender has declared lost.
struct LossSignal {
  TimeUs now;
  uint64_t packet_id = 0;
  // Id the next transmission will receive; everything below it was sent
  // before the loss was detected.
  uint64_t next_packet_id = 0;
};

// Window/pacing controller driven by the simulator. Calls for one flow are
// serialized.
class CongestionController {
 public:
  virtual ~CongestionController() = default;

  virtual void OnAck(const AckSample& ack) = 0;
  virtual void OnLoss(const LossSignal& loss) = 0;
  virtual void OnRto(TimeUs now) = 0;

  virtual SegmentCount cwnd() const = 0;
  // std::nullopt means unpaced.
  virtual std::optional<RatePps> pacing_rate() const = 0;
  virtual ModeTag mode() const = 0;
  virtual std::string_view name() const = 0;
};

}  // namespace dstarlab

#endif  // DSTARLAB_CORE_CONGESTION_CONTROLLER_H_
