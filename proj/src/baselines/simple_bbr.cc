#include "dstarlab/baselines/simple_bbr.h"

#include <algorithm>

namespace dstarlab::baselines {

namespace {

const std::array<Rational, 8> kGainCycle = {
    Rational(5, 4), Rational(3, 4), Rational(1, 1), Rational(1, 1),
    Rational(1, 1), Rational(1, 1), Rational(1, 1), Rational(1, 1)};

void UpdateCwnd(SimpleBbrState& state, const SimpleBbrConfig& config) {
  if (state.mode == BbrMode::kProbeRtt) {
    state.cwnd = config.min_cwnd;
    return;
  }
  state.cwnd = std::max(config.min_cwnd, BbrBdp(state) * 2);
}

void EndRound(SimpleBbrState& state, const AckSample& ack,
              const SimpleBbrConfig& config) {
  TimeUs elapsed = ack.now.SaturatingSub(state.round_start);
  if (elapsed.value() > 0) {
    state.bw_samples.push_back(DeliveryRate(state.delivered_in_round, elapsed));
    while (state.bw_samples.size() > config.bw_window_rounds) {
      state.bw_samples.pop_front();
    }
    state.btl_bw = *std::max_element(state.bw_samples.begin(),
                                     state.bw_samples.end());
  }
  state.round_start = ack.now;
  state.delivered_in_round = Segments(0);
  state.round_end_id = ack.next_packet_id;

  switch (state.mode) {
    case BbrMode::kStartup:
      if (state.btl_bw.per_second() >=
          state.full_bw.per_second() * Rational(5, 4)) {
        state.full_bw = state.btl_bw;
        state.full_bw_rounds = 0;
      } else if (++state.full_bw_rounds >= config.startup_flat_rounds) {
        state.mode = BbrMode::kDrain;
      }
      break;
    case BbrMode::kProbeBw:
      state.cycle_index = (state.cycle_index + 1) % kGainCycle.size();
      break;
    default:
      break;
  }
}

}  // namespace

Rational BbrPacingGain(const SimpleBbrState& state) {
  switch (state.mode) {
    case BbrMode::kStartup:
      return Rational(2, 1);
    case BbrMode::kDrain:
      return Rational(1, 2);
    case BbrMode::kProbeBw:
      return kGainCycle[state.cycle_index % kGainCycle.size()];
    case BbrMode::kProbeRtt:
      return Rational(1, 1);
  }
  return Rational(1, 1);
}

SegmentCount BbrBdp(const SimpleBbrState& state) {
  if (state.min_rtt.empty() || state.btl_bw.is_zero()) return Segments(0);
  return ComputeBdp(state.btl_bw, state.min_rtt.value());
}

SimpleBbrState BbrStep(SimpleBbrState state, const AckSample& ack,
                       const SimpleBbrConfig& config) {
  state.min_rtt = UpdateMinRtt(state.min_rtt, ack.rtt, ack.now);
  state.delivered_in_round += ack.newly_delivered;
  if (ack.packet_id >= state.round_end_id) EndRound(state, ack, config);

  if (state.mode == BbrMode::kDrain && ack.inflight <= BbrBdp(state)) {
    state.mode = BbrMode::kProbeBw;
    state.cycle_index = 0;
  }

  if (state.mode == BbrMode::kProbeRtt) {
    if (ack.now.SaturatingSub(state.probe_rtt_started) > ack.rtt * 2) {
      state.mode = BbrMode::kProbeBw;
      state.cycle_index = 0;
    }
  } else if (state.mode != BbrMode::kStartup &&
             ack.now.SaturatingSub(state.min_rtt.last_update) >
                 config.min_rtt_timeout) {
    state.mode = BbrMode::kProbeRtt;
    state.probe_rtt_started = ack.now;
    state.min_rtt = ResetMinRtt(ack.rtt, ack.now);
  }

  UpdateCwnd(state, config);
  return state;
}

SimpleBbrState BbrOnRto(SimpleBbrState state, TimeUs now,
                        const SimpleBbrConfig& config) {
  SimpleBbrState restarted;
  restarted.min_rtt = state.min_rtt;
  restarted.round_start = now;
  restarted.round_end_id = state.round_end_id;
  restarted.cwnd = config.min_cwnd;
  return restarted;
}

std::optional<RatePps> SimpleBbrController::pacing_rate() const {
  if (state_.btl_bw.is_zero()) return std::nullopt;
  return RatePps(state_.btl_bw.per_second() * BbrPacingGain(state_));
}

ModeTag SimpleBbrController::mode() const {
  switch (state_.mode) {
    case BbrMode::kStartup:
      return ModeTag::kStartup;
    case BbrMode::kDrain:
      return ModeTag::kDrain;
    case BbrMode::kProbeBw:
      return ModeTag::kProbeBw;
    case BbrMode::kProbeRtt:
      return ModeTag::kProbeRtt;
  }
  return ModeTag::kProbeBw;
}

}  // namespace dstarlab::baselines
