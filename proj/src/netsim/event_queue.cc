#include "dstarlab/netsim/event_queue.h"

#include <algorithm>
#include <stdexcept>

namespace dstarlab::netsim {

namespace {

// Heap comparator: the earliest (at, seq) sits at the front.
bool Later(const Event& a, const Event& b) {
  if (a.at != b.at) return a.at > b.at;
  return a.seq > b.seq;
}

}  // namespace

void EventQueue::Push(TimeUs at, EventKind kind, const Packet& packet) {
  heap_.push_back(Event{at, next_seq_++, kind, packet});
  std::push_heap(heap_.begin(), heap_.end(), Later);
}

Event EventQueue::Pop() {
  if (heap_.empty()) throw std::logic_error("pop from empty event queue");
  std::pop_heap(heap_.begin(), heap_.end(), Later);
  Event e = heap_.back();
  heap_.pop_back();
  return e;
}

}  // namespace dstarlab::netsim
