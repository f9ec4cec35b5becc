#ifndef DSTARLAB_NETSIM_TRACE_H_
#define DSTARLAB_NETSIM_TRACE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dstarlab/core/congestion_controller.h"
#include "dstarlab/core/units.h"

namespace dstarlab::netsim {

enum class TraceEvent : uint8_t { kAck, kLoss, kRto };

std::string_view TraceEventName(TraceEvent event);
std::optional<TraceEvent> ParseTraceEvent(std::string_view name);

// Sender state right after handling one ACK (or timeout).
struct TraceRecord {
  TimeUs t;
  TimeUs rtt;  // zero for timeout records
  uint32_t cwnd = 0;
  uint32_t inflight = 0;
  uint64_t delivered_cum = 0;
  ModeTag mode = ModeTag::kSlowStart;
  TraceEvent event = TraceEvent::kAck;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct FlowTrace {
  uint32_t flow_id = 0;
  std::string algorithm;
  TimeUs start;
  TimeUs base_rtt;
  std::vector<TraceRecord> records;
  uint64_t losses = 0;
  uint64_t retransmits = 0;
  uint64_t rtos = 0;

  // Appends, folding into the previous record if it carries the same
  // timestamp so t stays strictly increasing.
  void Append(const TraceRecord& record);
};

// Mean and peak bottleneck occupancy over [t, t + interval).
struct QueueSample {
  TimeUs t;
  double mean_occupancy = 0;
  uint32_t max_occupancy = 0;
};

}  // namespace dstarlab::netsim

#endif  // DSTARLAB_NETSIM_TRACE_H_
