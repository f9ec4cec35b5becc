#ifndef DSTARLAB_NETSIM_EVENT_QUEUE_H_
#define DSTARLAB_NETSIM_EVENT_QUEUE_H_

#include <cstdint>
#include <vector>

#include "dstarlab/core/units.h"

namespace dstarlab::netsim {

enum class EventKind : uint8_t {
  kSendEligible,
  kEnqueue,
  kDequeueComplete,
  kAckArrival,
  kRtoFire,
};

// A segment on the wire. ACKs reuse the data segment's record.
struct Packet {
  uint32_t flow = 0;
  uint64_t id = 0;
  TimeUs sent_at;
  bool ecn_ce = false;
  // Bottleneck admission order, set on enqueue.
  uint64_t serial = 0;
};

struct Event {
  TimeUs at;
  uint64_t seq = 0;
  EventKind kind = EventKind::kSendEligible;
  Packet packet;
};

// Future-event set ordered by (at, seq). seq is assigned on push, so ties on
// time resolve in insertion order and runs are reproducible.
class EventQueue {
 public:
  void Push(TimeUs at, EventKind kind, const Packet& packet);
  Event Pop();
  const Event& Top() const { return heap_.front(); }
  bool empty() const { return heap_.empty(); }
  size_t size() const { return heap_.size(); }
  uint64_t pushed() const { return next_seq_; }

  // Unordered view for audits.
  const std::vector<Event>& pending() const { return heap_; }

 private:
  std::vector<Event> heap_;
  uint64_t next_seq_ = 0;
};

}  // namespace dstarlab::netsim

#endif  // DSTARLAB_NETSIM_EVENT_QUEUE_H_
