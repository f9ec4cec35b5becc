#ifndef DSTARLAB_BASELINES_RENO_H_
#define DSTARLAB_BASELINES_RENO_H_

#include <cstdint>
#include <limits>

#include "dstarlab/core/congestion_controller.h"

namespace dstarlab::baselines {

enum class RenoPhase { kSlowStart, kAvoidance, kRecovery };

struct RenoState {
  SegmentCount cwnd{4};
  SegmentCount ssthresh{std::numeric_limits<uint32_t>::max()};
  RenoPhase phase = RenoPhase::kSlowStart;
  // ACKs counted toward the next +1 in avoidance.
  uint64_t acks_toward_increase = 0;
};

// Slow start: +1 per ACK until ssthresh. Avoidance: +1 per cwnd ACKs.
// Recovery: frozen.
RenoState RenoOnAck(RenoState state);

// ssthresh = max(cwnd / 2, 2); cwnd = ssthresh.
RenoState RenoOnLoss(RenoState state);

RenoState RenoOnRto(RenoState state);

class RenoController : public CongestionController {
 public:
  RenoController() = default;

  void OnAck(const AckSample& ack) override;
  void OnLoss(const LossSignal& loss) override;
  void OnRto(TimeUs now) override;

  SegmentCount cwnd() const override { return state_.cwnd; }
  std::optional<RatePps> pacing_rate() const override { return std::nullopt; }
  ModeTag mode() const override;
  std::string_view name() const override { return "reno"; }

  const RenoState& state() const { return state_; }

 private:
  RenoState state_;
  // One window reduction per loss episode: losses of segments sent before
  // this id are part of the episode already handled.
  uint64_t recovery_point_ = 0;
};

}  // namespace dstarlab::baselines

#endif  // DSTARLAB_BASELINES_RENO_H_
