#include "dstarlab/baselines/vegas.h"

#include <algorithm>
#include <stdexcept>

namespace dstarlab::baselines {

namespace {
constexpr SegmentCount kMinCwnd{2};
}

Rational VegasBacklog(const VegasState& state, TimeUs rtt) {
  if (!state.base_rtt) throw std::logic_error("Vegas backlog without base RTT");
  TimeUs queueing = rtt.SaturatingSub(*state.base_rtt);
  return Rational(state.cwnd.value(), 1) * Rational(queueing.value(), rtt.value());
}

VegasState VegasUpdate(VegasState state, TimeUs rtt) {
  Rational diff = VegasBacklog(state, rtt);
  if (diff < Rational::Integer(state.alpha.value())) {
    state.cwnd += Segments(1);
  } else if (diff > Rational::Integer(state.beta.value())) {
    state.cwnd = std::max(state.cwnd - Segments(1), kMinCwnd);
  }
  return state;
}

void VegasController::OnAck(const AckSample& ack) {
  if (!state_.base_rtt || ack.rtt < *state_.base_rtt) state_.base_rtt = ack.rtt;
  if (!round_min_rtt_ || ack.rtt < *round_min_rtt_) round_min_rtt_ = ack.rtt;

  if (state_.slow_start) {
    state_.cwnd += Segments(1);
    if (state_.cwnd >= state_.ssthresh) state_.slow_start = false;
  }
  if (ack.packet_id < round_end_id_) return;

  // Round complete.
  if (!state_.slow_start) state_ = VegasUpdate(state_, *round_min_rtt_);
  round_min_rtt_.reset();
  round_end_id_ = ack.next_packet_id;
}

void VegasController::OnLoss(const LossSignal& loss) {
  if (loss.packet_id < recovery_point_) return;
  state_.ssthresh = std::max(state_.cwnd / 2, kMinCwnd);
  state_.cwnd = state_.ssthresh;
  state_.slow_start = false;
  recovery_point_ = loss.next_packet_id;
}

void VegasController::OnRto(TimeUs /*now*/) {
  state_.ssthresh = std::max(state_.cwnd / 2, kMinCwnd);
  state_.cwnd = kMinCwnd;
  state_.slow_start = true;
  round_min_rtt_.reset();
}

}  // namespace dstarlab::baselines
