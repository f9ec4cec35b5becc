#ifndef DSTARLAB_BASELINES_SIMPLE_BBR_H_
#define DSTARLAB_BASELINES_SIMPLE_BBR_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>

#include "dstarlab/core/congestion_controller.h"

namespace dstarlab::baselines {

// Reduced pacing-first reference controller: windowed-max bandwidth, min RTT
// with a staleness probe, an 8-phase pacing gain cycle and a window of twice
// the estimated BDP. Not a faithful model of any BBR release.
enum class BbrMode { kStartup, kDrain, kProbeBw, kProbeRtt };

struct SimpleBbrConfig {
  size_t bw_window_rounds = 10;
  TimeUs min_rtt_timeout = Seconds(10);
  SegmentCount min_cwnd{4};
  // Startup ends after this many rounds without 25% bandwidth growth.
  int startup_flat_rounds = 3;
};

struct SimpleBbrState {
  BbrMode mode = BbrMode::kStartup;
  RatePps btl_bw;
  std::deque<RatePps> bw_samples;  // newest last, one per round
  MinRttFilter min_rtt;
  size_t cycle_index = 0;
  SegmentCount cwnd{4};

  // Round bookkeeping.
  uint64_t round_end_id = 0;
  TimeUs round_start;
  SegmentCount delivered_in_round;

  RatePps full_bw;
  int full_bw_rounds = 0;
  TimeUs probe_rtt_started;
};

Rational BbrPacingGain(const SimpleBbrState& state);

// Estimated BDP from btl_bw and min_rtt, zero before both exist.
SegmentCount BbrBdp(const SimpleBbrState& state);

SimpleBbrState BbrStep(SimpleBbrState state, const AckSample& ack,
                       const SimpleBbrConfig& config = {});

SimpleBbrState BbrOnRto(SimpleBbrState state, TimeUs now,
                        const SimpleBbrConfig& config = {});

class SimpleBbrController : public CongestionController {
 public:
  explicit SimpleBbrController(SimpleBbrConfig config = {}) : config_(config) {}

  void OnAck(const AckSample& ack) override {
    state_ = BbrStep(state_, ack, config_);
  }
  // Loss is not a control signal for this model.
  void OnLoss(const LossSignal&) override {}
  void OnRto(TimeUs now) override { state_ = BbrOnRto(state_, now, config_); }

  SegmentCount cwnd() const override { return state_.cwnd; }
  std::optional<RatePps> pacing_rate() const override;
  ModeTag mode() const override;
  std::string_view name() const override { return "bbr"; }

  const SimpleBbrState& state() const { return state_; }

 private:
  SimpleBbrConfig config_;
  SimpleBbrState state_;
};

}  // namespace dstarlab::baselines

#endif  // DSTARLAB_BASELINES_SIMPLE_BBR_H_
