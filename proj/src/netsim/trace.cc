#include "dstarlab/netsim/trace.h"

#include <algorithm>

namespace dstarlab::netsim {

std::string_view TraceEventName(TraceEvent event) {
  switch (event) {
    case TraceEvent::kAck:
      return "ack";
    case TraceEvent::kLoss:
      return "loss";
    case TraceEvent::kRto:
      return "rto";
  }
  return "ack";
}

std::optional<TraceEvent> ParseTraceEvent(std::string_view name) {
  if (name == "ack") return TraceEvent::kAck;
  if (name == "loss") return TraceEvent::kLoss;
  if (name == "rto") return TraceEvent::kRto;
  return std::nullopt;
}

void FlowTrace::Append(const TraceRecord& record) {
  if (!records.empty() && records.back().t == record.t) {
    TraceRecord& last = records.back();
    TimeUs rtt = record.event == TraceEvent::kRto ? last.rtt : record.rtt;
    TraceEvent event = std::max(last.event, record.event);
    last = record;
    last.rtt = rtt;
    last.event = event;
    return;
  }
  records.push_back(record);
}

}  // namespace dstarlab::netsim
