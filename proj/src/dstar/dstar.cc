#include "dstarlab/dstar/dstar.h"

#include <algorithm>

namespace dstarlab::dstar {

namespace {

TimeUs Elapsed(const DstarState& state, TimeUs now) {
  return now.SaturatingSub(state.mode_entered_at);
}

void EnterMode(DstarState& state, DstarMode mode, TimeUs now) {
  state.mode = mode;
  state.mode_entered_at = now;
  state.delivered_in_mode = Segments(0);
}

// New BDP estimate from the deliveries counted since the mode was entered.
void MeasureBdp(DstarState& state, TimeUs now) {
  TimeUs elapsed = Elapsed(state, now);
  RatePps rate = DeliveryRate(state.delivered_in_mode, elapsed);
  state.bdp.last_bdp = state.bdp.bdp;
  state.bdp.bdp = ComputeBdp(rate, state.min_rtt.value());
}

}  // namespace

std::string_view ModeName(DstarMode mode) {
  return dstarlab::ModeName(ToModeTag(mode));
}

ModeTag ToModeTag(DstarMode mode) {
  switch (mode) {
    case DstarMode::kSlowStart:
      return ModeTag::kSlowStart;
    case DstarMode::kDrain:
      return ModeTag::kDrain;
    case DstarMode::kGain1:
      return ModeTag::kGain1;
    case DstarMode::kGain2:
      return ModeTag::kGain2;
  }
  return ModeTag::kSlowStart;
}

DstarState InitialState(TimeUs start, const DstarConfig& config) {
  DstarState state;
  state.snd_cwnd = config.initial_cwnd;
  state.gain_cwnd = config.min_cwnd;
  state.mode_entered_at = start;
  return state;
}

SegmentCount SteadyGain(SegmentCount bdp, SegmentCount last_bdp,
                        const DstarConfig& config) {
  uint64_t sigma = bdp > last_bdp ? (bdp - last_bdp).value()
                                  : (last_bdp - bdp).value();
  uint64_t floor = config.min_cwnd.value();
  uint64_t raw = floor + std::min(sigma * 2, bdp.value());
  uint64_t upper = std::max(floor, bdp.value());
  return Segments(std::clamp(raw, floor, upper));
}

SegmentCount SlowStartGain(SegmentCount bdp, const DstarConfig& config) {
  return std::max(config.min_cwnd, Segments((bdp.value() + 1) / 2));
}

DstarState OnAck(DstarState state, const AckSample& ack,
                 const DstarConfig& config) {
  state.min_rtt = UpdateMinRtt(state.min_rtt, ack.rtt, ack.now);
  state.last_rtt_sample = ack.rtt;
  if (state.tracking_delivery()) state.delivered_in_mode += ack.newly_delivered;

  const TimeUs now = ack.now;
  const TimeUs rtt = state.last_rtt_sample;
  switch (state.mode) {
    case DstarMode::kSlowStart:
      return SlowStartStep(state, ack, now, config);
    case DstarMode::kDrain:
      if (Elapsed(state, now) > rtt * 2) {
        state.snd_cwnd = state.bdp.bdp + state.gain_cwnd;
        EnterMode(state, DstarMode::kGain1, now);
      }
      break;
    case DstarMode::kGain1:
      if (Elapsed(state, now) > rtt * 2) {
        EnterMode(state, DstarMode::kGain2, now);
      }
      break;
    case DstarMode::kGain2:
      if (Elapsed(state, now) > rtt) state = Gain2Boundary(state, now, config);
      break;
  }
  return state;
}

DstarState Gain2Boundary(DstarState state, TimeUs now,
                         const DstarConfig& config) {
  if (state.mode != DstarMode::kGain2) {
    throw std::logic_error("GAIN_2 boundary outside GAIN_2");
  }
  MeasureBdp(state, now);
  state.gain_cwnd = SteadyGain(state.bdp.bdp, state.bdp.last_bdp, config);

  if (now.SaturatingSub(state.min_rtt.last_update) > config.min_rtt_timeout) {
    state.snd_cwnd = config.min_cwnd;
    state.min_rtt = ResetMinRtt(state.last_rtt_sample, now);
    EnterMode(state, DstarMode::kDrain, now);
  } else {
    state.snd_cwnd = state.bdp.bdp + state.gain_cwnd;
    EnterMode(state, DstarMode::kGain1, now);
  }
  return state;
}

DstarState SlowStartStep(DstarState state, const AckSample& ack, TimeUs now,
                         const DstarConfig& config) {
  if (state.mode != DstarMode::kSlowStart) return state;
  if (ack.ecn_ce) return ExitSlowStart(state, now, config);

  const TimeUs rtt = state.last_rtt_sample;
  if (!state.ss_measuring) {
    if (Elapsed(state, now) > rtt * 2) {
      EnterMode(state, DstarMode::kSlowStart, now);
      state.ss_measuring = true;
    }
    return state;
  }
  if (Elapsed(state, now) <= rtt) return state;

  MeasureBdp(state, now);
  if (state.bdp.bdp <= state.bdp.last_bdp) {
    ++state.ss_flat_rounds;
  } else {
    state.ss_flat_rounds = 0;
  }
  if (state.ss_flat_rounds >= config.slow_start_exit_rounds) {
    return ExitSlowStart(state, now, config);
  }
  state.gain_cwnd = SlowStartGain(state.bdp.bdp, config);
  state.snd_cwnd = state.bdp.bdp + state.gain_cwnd;
  EnterMode(state, DstarMode::kSlowStart, now);
  state.ss_measuring = false;
  return state;
}

DstarState ExitSlowStart(DstarState state, TimeUs now,
                         const DstarConfig& config) {
  state.gain_cwnd = SteadyGain(state.bdp.bdp, state.bdp.last_bdp, config);
  state.snd_cwnd = state.bdp.bdp + state.gain_cwnd;
  state.ss_measuring = false;
  state.ss_flat_rounds = 0;
  EnterMode(state, DstarMode::kGain1, now);
  return state;
}

DstarState OnLoss(DstarState state, TimeUs now, const DstarConfig& config) {
  if (state.mode == DstarMode::kSlowStart) {
    return ExitSlowStart(state, now, config);
  }
  return state;
}

DstarState OnRto(DstarState state, TimeUs now, const DstarConfig& config) {
  DstarState restarted = InitialState(now, config);
  restarted.min_rtt = state.min_rtt;
  restarted.last_rtt_sample = state.last_rtt_sample;
  return restarted;
}

DstarController::DstarController(TimeUs start, DstarConfig config)
    : config_(config), state_(InitialState(start, config_)) {}

void DstarController::OnAck(const AckSample& ack) {
  state_ = dstar::OnAck(state_, ack, config_);
}

void DstarController::OnLoss(const LossSignal& loss) {
  state_ = dstar::OnLoss(state_, loss.now, config_);
}

void DstarController::OnRto(TimeUs now) {
  state_ = dstar::OnRto(state_, now, config_);
}

}  // namespace dstarlab::dstar
