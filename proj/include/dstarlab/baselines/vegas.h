#ifndef DSTARLAB_BASELINES_VEGAS_H_
#define DSTARLAB_BASELINES_VEGAS_H_

#include <cstdint>
#include <limits>
#include <optional>

#include "dstarlab/core/congestion_controller.h"

namespace dstarlab::baselines {

struct VegasState {
  SegmentCount cwnd{4};
  // Lifetime minimum; never reset.
  std::optional<TimeUs> base_rtt;
  SegmentCount alpha{2};
  SegmentCount beta{4};
  SegmentCount ssthresh{std::numeric_limits<uint32_t>::max()};
  bool slow_start = true;
};

// Backlog estimate cwnd * (rtt - base_rtt) / rtt, exact.
Rational VegasBacklog(const VegasState& state, TimeUs rtt);

// One adjustment: +1 below alpha, -1 above beta, otherwise unchanged.
// Requires base_rtt to be set.
VegasState VegasUpdate(VegasState state, TimeUs rtt);

// Reno-style slow start until loss or ssthresh; once-per-RTT backlog
// control afterwards.
class VegasController : public CongestionController {
 public:
  VegasController() = default;

  void OnAck(const AckSample& ack) override;
  void OnLoss(const LossSignal& loss) override;
  void OnRto(TimeUs now) override;

  SegmentCount cwnd() const override { return state_.cwnd; }
  std::optional<RatePps> pacing_rate() const override { return std::nullopt; }
  ModeTag mode() const override {
    return state_.slow_start ? ModeTag::kSlowStart : ModeTag::kAvoidance;
  }
  std::string_view name() const override { return "vegas"; }

  const VegasState& state() const { return state_; }

 private:
  VegasState state_;
  uint64_t round_end_id_ = 0;
  std::optional<TimeUs> round_min_rtt_;
  uint64_t recovery_point_ = 0;
};

}  // namespace dstarlab::baselines

#endif  // DSTARLAB_BASELINES_VEGAS_H_
