#include "dstarlab/netsim/bottleneck_queue.h"

#include <algorithm>
#include <numeric>

namespace dstarlab::netsim {

BottleneckQueue::BottleneckQueue(uint64_t rate_bps, uint32_t mss_bytes,
                                 SegmentCount capacity,
                                 std::optional<SegmentCount> ecn_threshold)
    : capacity_(capacity), ecn_threshold_(ecn_threshold) {
  if (rate_bps == 0 || mss_bytes == 0) {
    throw std::invalid_argument("bottleneck rate and MSS must be positive");
  }
  // One segment takes mss*8*1e6 / rate microseconds.
  uint64_t segment_bit_us = static_cast<uint64_t>(mss_bytes) * 8 * 1000000;
  uint64_t g = std::gcd(rate_bps, segment_bit_us);
  units_per_us_ = rate_bps / g;
  units_per_segment_ = segment_bit_us / g;
}

TimeUs BottleneckQueue::UnitsToTimeCeil(Units u) const {
  Units us = (u + units_per_us_ - 1) / units_per_us_;
  return TimeUs(static_cast<uint64_t>(us));
}

TimeUs BottleneckQueue::busy_until() const { return UnitsToTimeCeil(busy_until_); }

EnqueueOutcome BottleneckQueue::Enqueue(Packet packet, TimeUs now) {
  EnqueueOutcome out;
  if (occupancy() >= capacity_) {
    out.result = EnqueueResult::kDropped;
    return out;
  }
  out.result = EnqueueResult::kAccepted;
  if (ecn_threshold_ && occupancy() >= *ecn_threshold_) {
    out.result = EnqueueResult::kAcceptedCe;
    packet.ecn_ce = true;
  }
  Units arrival = static_cast<Units>(now.value()) * units_per_us_;
  Units start = std::max(arrival, busy_until_);
  Units finish = start + units_per_segment_;
  busy_until_ = finish;
  packet.serial = next_serial_++;
  out.serial = packet.serial;
  entries_.push_back(Entry{packet, arrival, start, finish});
  out.departure = UnitsToTimeCeil(finish);
  return out;
}

Packet BottleneckQueue::CompleteDeparture(uint64_t expected_serial, bool check) {
  if (entries_.empty()) throw InvariantViolation("departure from empty queue");
  Entry head = entries_.front();
  entries_.pop_front();
  if (check) {
    ++fifo_checks_;
    if (head.packet.serial != expected_serial) {
      throw InvariantViolation("bottleneck served segments out of arrival order");
    }
    if (!entries_.empty() && entries_.front().arrival <= head.finish) {
      ++work_checks_;
      if (entries_.front().start != head.finish) {
        throw InvariantViolation("bottleneck idle while segments were waiting");
      }
    }
  }
  return head.packet;
}

}  // namespace dstarlab::netsim
