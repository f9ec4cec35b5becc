#include "dstarlab/baselines/reno.h"

#include <algorithm>

namespace dstarlab::baselines {

RenoState RenoOnAck(RenoState state) {
  switch (state.phase) {
    case RenoPhase::kSlowStart:
      state.cwnd += Segments(1);
      if (state.cwnd >= state.ssthresh) {
        state.phase = RenoPhase::kAvoidance;
        state.acks_toward_increase = 0;
      }
      break;
    case RenoPhase::kAvoidance:
      if (++state.acks_toward_increase >= state.cwnd.value()) {
        state.cwnd += Segments(1);
        state.acks_toward_increase = 0;
      }
      break;
    case RenoPhase::kRecovery:
      break;
  }
  return state;
}

RenoState RenoOnLoss(RenoState state) {
  state.ssthresh = std::max(state.cwnd / 2, Segments(2));
  state.cwnd = state.ssthresh;
  state.phase = RenoPhase::kRecovery;
  state.acks_toward_increase = 0;
  return state;
}

RenoState RenoOnRto(RenoState state) {
  state.ssthresh = std::max(state.cwnd / 2, Segments(2));
  state.cwnd = Segments(1);
  state.phase = RenoPhase::kSlowStart;
  state.acks_toward_increase = 0;
  return state;
}

void RenoController::OnAck(const AckSample& ack) {
  if (state_.phase == RenoPhase::kRecovery && ack.packet_id >= recovery_point_) {
    state_.phase = RenoPhase::kAvoidance;
  }
  state_ = RenoOnAck(state_);
}

void RenoController::OnLoss(const LossSignal& loss) {
  if (state_.phase == RenoPhase::kRecovery && loss.packet_id < recovery_point_) {
    return;
  }
  state_ = RenoOnLoss(state_);
  recovery_point_ = loss.next_packet_id;
}

void RenoController::OnRto(TimeUs /*now*/) {
  state_ = RenoOnRto(state_);
}

ModeTag RenoController::mode() const {
  switch (state_.phase) {
    case RenoPhase::kSlowStart:
      return ModeTag::kSlowStart;
    case RenoPhase::kAvoidance:
      return ModeTag::kAvoidance;
    case RenoPhase::kRecovery:
      return ModeTag::kRecovery;
  }
  return ModeTag::kAvoidance;
}

}  // namespace dstarlab::baselines
