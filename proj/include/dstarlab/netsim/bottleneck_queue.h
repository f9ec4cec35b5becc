#ifndef DSTARLAB_NETSIM_BOTTLENECK_QUEUE_H_
#define DSTARLAB_NETSIM_BOTTLENECK_QUEUE_H_

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>

#include "dstarlab/core/units.h"
#include "dstarlab/netsim/event_queue.h"

namespace dstarlab::netsim {

enum class EnqueueResult { kAccepted, kAcceptedCe, kDropped };

struct EnqueueOutcome {
  EnqueueResult result = EnqueueResult::kDropped;
  // When the segment finishes serialization; only set when accepted.
  TimeUs departure;
  uint64_t serial = 0;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Single drop-tail FIFO served at a fixed bit rate. Occupancy counts the
// segment in service. Service times are tracked exactly in units of
// 1/gcd-reduced rate so non-integral serialization times do not drift;
// departure events are rounded up to the next microsecond.
class BottleneckQueue {
 public:
  BottleneckQueue(uint64_t rate_bps, uint32_t mss_bytes, SegmentCount capacity,
                  std::optional<SegmentCount> ecn_threshold = std::nullopt);

  EnqueueOutcome Enqueue(Packet packet, TimeUs now);

  // Removes the head segment. With check enabled, verifies the head is the
  // expected serial (FIFO) and that the next waiting segment starts exactly
  // when this one finished (work conservation).
  Packet CompleteDeparture(uint64_t expected_serial, bool check);

  SegmentCount occupancy() const { return Segments(entries_.size()); }
  SegmentCount capacity() const { return capacity_; }
  std::optional<SegmentCount> ecn_threshold() const { return ecn_threshold_; }
  TimeUs busy_until() const;

  // Packets currently held, head first.
  template <typename Fn>
  void ForEach(Fn&& fn) const {
    for (const auto& e : entries_) fn(e.packet);
  }

  uint64_t fifo_checks() const { return fifo_checks_; }
  uint64_t work_conservation_checks() const { return work_checks_; }

 private:
  using Units = unsigned __int128;
  struct Entry {
    Packet packet;
    Units arrival;
    Units start;
    Units finish;
  };

  TimeUs UnitsToTimeCeil(Units u) const;

  SegmentCount capacity_;
  std::optional<SegmentCount> ecn_threshold_;
  uint64_t units_per_us_ = 1;
  uint64_t units_per_segment_ = 1;
  Units busy_until_ = 0;
  std::deque<Entry> entries_;
  uint64_t next_serial_ = 0;
  uint64_t fifo_checks_ = 0;
  uint64_t work_checks_ = 0;
};

}  // namespace dstarlab::netsim

#endif  // DSTARLAB_NETSIM_BOTTLENECK_QUEUE_H_
