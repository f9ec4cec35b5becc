#ifndef DSTARLAB_DSTAR_DSTAR_H_
#define DSTARLAB_DSTAR_DSTAR_H_

#include <optional>
#include <string_view>

#include "dstarlab/core/congestion_controller.h"
#include "dstarlab/core/estimators.h"
#include "dstarlab/core/units.h"

namespace dstarlab::dstar {

enum class DstarMode { kSlowStart, kDrain, kGain1, kGain2 };

std::string_view ModeName(DstarMode mode);
ModeTag ToModeTag(DstarMode mode);

struct DstarConfig {
  // Window floor; also the DRAIN window and the restart window.
  SegmentCount min_cwnd{4};
  SegmentCount initial_cwnd{4};
  TimeUs min_rtt_timeout = Seconds(10);
  // Consecutive non-increasing BDP measurements that end slow start.
  int slow_start_exit_rounds = 1;
};

// Per-flow state. All transitions are pure functions below; the controller
// class is a thin wrapper for the simulator.
struct DstarState {
  DstarMode mode = DstarMode::kSlowStart;
  // Inside slow start: false while the window settles, true while deliveries
  // are being counted for the next BDP estimate.
  bool ss_measuring = false;
  SegmentCount snd_cwnd{4};
  SegmentCount gain_cwnd{4};
  BdpEstimate bdp;
  MinRttFilter min_rtt;
  TimeUs mode_entered_at;
  SegmentCount delivered_in_mode;
  TimeUs last_rtt_sample;
  int ss_flat_rounds = 0;

  bool tracking_delivery() const {
    return mode == DstarMode::kGain2 ||
           (mode == DstarMode::kSlowStart && ss_measuring);
  }
};

DstarState InitialState(TimeUs start, const DstarConfig& config = {});

// gain_cwnd from two successive BDP estimates:
// clamp(floor + min(2|bdp - last_bdp|, bdp), floor, max(floor, bdp)).
SegmentCount SteadyGain(SegmentCount bdp, SegmentCount last_bdp,
                        const DstarConfig& config = {});

// Slow-start gain: max(floor, bdp / 2), halves rounded up.
SegmentCount SlowStartGain(SegmentCount bdp, const DstarConfig& config = {});

DstarState OnAck(DstarState state, const AckSample& ack,
                 const DstarConfig& config = {});

// End of a GAIN_2 measurement. Requires mode == GAIN_2 and a positive
// elapsed time; throws ZeroIntervalError otherwise.
DstarState Gain2Boundary(DstarState state, TimeUs now,
                         const DstarConfig& config = {});

// Slow-start progression for one ACK (bookkeeping already applied).
DstarState SlowStartStep(DstarState state, const AckSample& ack, TimeUs now,
                         const DstarConfig& config = {});

// Leaves slow start for GAIN_1 using the steady-state gain rule.
DstarState ExitSlowStart(DstarState state, TimeUs now,
                         const DstarConfig& config = {});

// Loss only matters in slow start, where it ends the startup phase.
DstarState OnLoss(DstarState state, TimeUs now, const DstarConfig& config = {});

// Restart after a retransmission timeout. Only the min RTT filter survives.
DstarState OnRto(DstarState state, TimeUs now, const DstarConfig& config = {});

class DstarController : public CongestionController {
 public:
  DstarController(TimeUs start, DstarConfig config = {});

  void OnAck(const AckSample& ack) override;
  void OnLoss(const LossSignal& loss) override;
  void OnRto(TimeUs now) override;

  SegmentCount cwnd() const override { return state_.snd_cwnd; }
  // Always unpaced.
  std::optional<RatePps> pacing_rate() const override { return std::nullopt; }
  ModeTag mode() const override { return ToModeTag(state_.mode); }
  std::string_view name() const override { return "dstar"; }

  const DstarState& state() const { return state_; }

 private:
  DstarConfig config_;
  DstarState state_;
};

}  // namespace dstarlab::dstar

#endif  // DSTARLAB_DSTAR_DSTAR_H_
