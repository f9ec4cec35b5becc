#include "dstarlab/netsim/simulator.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "dstarlab/baselines/reno.h"
#include "dstarlab/baselines/simple_bbr.h"
#include "dstarlab/baselines/vegas.h"
#include "dstarlab/dstar/dstar.h"
#include "dstarlab/netsim/bottleneck_queue.h"
#include "dstarlab/netsim/event_queue.h"

namespace dstarlab::netsim {

namespace {

constexpr uint64_t kDupAckThreshold = 3;
constexpr TimeUs kMinRto = Milliseconds(200);
constexpr TimeUs kInitialRto = Seconds(1);
constexpr uint64_t kMaxRtoBackoff = 64;

// Time-weighted bottleneck occupancy, binned.
class OccupancyBins {
 public:
  OccupancyBins(TimeUs interval, TimeUs horizon)
      : interval_(interval.value()),
        integral_((horizon.value() + interval_ - 1) / interval_, 0.0),
        max_(integral_.size(), 0) {}

  void Change(TimeUs now, uint64_t occupancy) {
    Advance(now.value());
    current_ = occupancy;
    NotePeak(now.value() / interval_);
  }

  std::vector<QueueSample> Finish(TimeUs horizon) {
    Advance(horizon.value());
    std::vector<QueueSample> out(integral_.size());
    for (size_t i = 0; i < integral_.size(); ++i) {
      uint64_t begin = i * interval_;
      uint64_t width = std::min(interval_, horizon.value() - begin);
      out[i].t = TimeUs(begin);
      out[i].mean_occupancy = width ? integral_[i] / static_cast<double>(width) : 0;
      out[i].max_occupancy = max_[i];
    }
    return out;
  }

 private:
  void NotePeak(size_t bin) {
    if (bin < max_.size()) {
      max_[bin] = std::max(max_[bin], static_cast<uint32_t>(current_));
    }
  }

  void Advance(uint64_t to) {
    while (last_ < to) {
      size_t bin = last_ / interval_;
      if (bin >= integral_.size()) {
        last_ = to;
        return;
      }
      uint64_t seg_end = std::min((bin + 1) * interval_, to);
      integral_[bin] += static_cast<double>(current_) * static_cast<double>(seg_end - last_);
      last_ = seg_end;
      if (last_ % interval_ == 0) NotePeak(last_ / interval_);
    }
  }

  uint64_t interval_;
  std::vector<double> integral_;
  std::vector<uint32_t> max_;
  uint64_t last_ = 0;
  uint64_t current_ = 0;
};

struct Outstanding {
  uint64_t id;
};

struct Suspect {
  uint64_t id;
  uint64_t lost_at_ack;  // declared lost once this many ACKs have arrived
};

struct Sender {
  FlowSpec spec;
  TimeUs start;
  TimeUs stop;
  bool started = false;
  std::unique_ptr<CongestionController> cc;

  std::deque<Outstanding> outstanding;
  std::deque<Suspect> suspects;
  uint64_t next_id = 0;
  uint64_t acks = 0;
  uint64_t pending_retx = 0;
  FlowCounters counters;

  // RTT and retransmission timer.
  bool has_srtt = false;
  double srtt_us = 0;
  uint64_t backoff = 1;
  bool rto_armed = false;
  bool rto_event_pending = false;
  TimeUs rto_deadline;

  // Pacing.
  double next_send_us = 0;
  bool send_event_pending = false;
  TimeUs send_event_at;

  FlowTrace trace;

  uint64_t inflight() const { return outstanding.size() + suspects.size(); }

  TimeUs rto() const {
    TimeUs base = kInitialRto;
    if (has_srtt) {
      base = std::max(kMinRto, TimeUs(static_cast<uint64_t>(std::ceil(srtt_us * 4))));
    }
    return base * backoff;
  }
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, const SimOptions& options,
             const ControllerFactory& factory)
      : scenario_(scenario),
        options_(options),
        queue_(scenario.bottleneck_rate_bps, scenario.mss_bytes,
               scenario.queue_capacity, scenario.ecn_threshold),
        bins_(scenario.queue_sample_interval, scenario.sim_duration) {
    std::mt19937_64 rng(scenario.seed);
    const uint64_t jitter = scenario.start_jitter.value();
    for (size_t i = 0; i < scenario.flows.size(); ++i) {
      const FlowSpec& spec = scenario.flows[i];
      Sender s;
      s.spec = spec;
      s.start = spec.start + TimeUs(jitter ? rng() % (jitter + 1) : 0);
      s.stop = scenario.sim_duration;
      if (spec.duration) s.stop = std::min(s.stop, s.start + *spec.duration);
      s.cc = factory(scenario, i, s.start);
      s.trace.flow_id = static_cast<uint32_t>(i);
      s.trace.algorithm = std::string(s.cc->name());
      s.trace.start = s.start;
      s.trace.base_rtt = spec.base_rtt();
      senders_.push_back(std::move(s));
      Packet p;
      p.flow = static_cast<uint32_t>(i);
      events_.Push(senders_.back().start, EventKind::kSendEligible, p);
      senders_.back().send_event_pending = true;
      senders_.back().send_event_at = senders_.back().start;
    }
  }

  RunResult Execute() {
    uint64_t processed = 0;
    while (!events_.empty() && events_.Top().at <= scenario_.sim_duration) {
      Event e = events_.Pop();
      ++processed;
      Dispatch(e);
      if (options_.check_invariants) Audit();
    }
    RunResult result;
    result.seed = scenario_.seed;
    result.events_processed = processed;
    result.queue = bins_.Finish(scenario_.sim_duration);
    result.invariants = stats_;
    result.invariants.fifo_checks = queue_.fifo_checks();
    result.invariants.work_conservation_checks = queue_.work_conservation_checks();
    for (auto& s : senders_) {
      s.trace.losses = s.counters.losses_detected;
      s.trace.retransmits = s.counters.retransmits;
      s.trace.rtos = s.counters.rtos;
      result.bottleneck_drops += s.counters.dropped;
      result.counters.push_back(s.counters);
      result.traces.push_back(std::move(s.trace));
    }
    return result;
  }

 private:
  void Dispatch(const Event& e) {
    Sender& s = senders_[e.packet.flow];
    switch (e.kind) {
      case EventKind::kSendEligible:
        if (s.send_event_pending && s.send_event_at == e.at) {
          s.send_event_pending = false;
        }
        if (e.at >= s.start) s.started = true;
        TrySend(s, e.at);
        break;
      case EventKind::kEnqueue:
        OnEnqueue(s, e.packet, e.at);
        break;
      case EventKind::kDequeueComplete:
        OnDeparture(e.packet, e.at);
        break;
      case EventKind::kAckArrival:
        OnAck(s, e.packet, e.at);
        break;
      case EventKind::kRtoFire:
        OnRtoEvent(s, e.at);
        break;
    }
  }

  void TrySend(Sender& s, TimeUs now) {
    if (!s.started) return;
    while (s.pending_retx > 0 || now < s.stop) {
      if (s.inflight() >= s.cc->cwnd().value()) break;
      std::optional<RatePps> pacing = s.cc->pacing_rate();
      if (pacing) {
        double now_us = static_cast<double>(now.value());
        if (s.next_send_us > now_us) {
          ScheduleSend(s, TimeUs(static_cast<uint64_t>(std::ceil(s.next_send_us))));
          break;
        }
        double interval = 1e6 / pacing->ToDouble();
        s.next_send_us = std::max(s.next_send_us, now_us) + interval;
      }
      Transmit(s, now);
    }
  }

  void ScheduleSend(Sender& s, TimeUs at) {
    if (s.send_event_pending && s.send_event_at <= at) return;
    Packet p;
    p.flow = s.trace.flow_id;
    events_.Push(at, EventKind::kSendEligible, p);
    s.send_event_pending = true;
    s.send_event_at = at;
  }

  void Transmit(Sender& s, TimeUs now) {
    Packet p;
    p.flow = s.trace.flow_id;
    p.id = s.next_id++;
    p.sent_at = now;
    if (s.pending_retx > 0) {
      --s.pending_retx;
      ++s.counters.retransmits;
    }
    s.outstanding.push_back(Outstanding{p.id});
    ++s.counters.sent;
    ++s.counters.in_network;
    events_.Push(now + s.spec.prop_delay_fwd, EventKind::kEnqueue, p);
    if (!s.rto_armed) ArmRto(s, now);
  }

  void ArmRto(Sender& s, TimeUs now) {
    s.rto_armed = true;
    s.rto_deadline = now + s.rto();
    if (!s.rto_event_pending) {
      Packet p;
      p.flow = s.trace.flow_id;
      events_.Push(s.rto_deadline, EventKind::kRtoFire, p);
      s.rto_event_pending = true;
    }
  }

  void OnEnqueue(Sender& s, const Packet& packet, TimeUs now) {
    EnqueueOutcome out = queue_.Enqueue(packet, now);
    if (out.result == EnqueueResult::kDropped) {
      ++s.counters.dropped;
      --s.counters.in_network;
      return;
    }
    Packet marker;
    marker.flow = packet.flow;
    marker.serial = out.serial;
    events_.Push(out.departure, EventKind::kDequeueComplete, marker);
    bins_.Change(now, queue_.occupancy().value());
  }

  void OnDeparture(const Packet& marker, TimeUs now) {
    Packet p = queue_.CompleteDeparture(marker.serial, options_.check_invariants);
    bins_.Change(now, queue_.occupancy().value());
    const Sender& s = senders_[p.flow];
    events_.Push(now + s.spec.prop_delay_rev, EventKind::kAckArrival, p);
  }

  void OnAck(Sender& s, const Packet& p, TimeUs now) {
    ++s.counters.delivered;
    --s.counters.in_network;
    ++s.acks;
    const TimeUs rtt = now - p.sent_at;
    const double sample = static_cast<double>(rtt.value());
    if (!s.has_srtt) {
      s.srtt_us = sample;
      s.has_srtt = true;
    } else {
      s.srtt_us += (sample - s.srtt_us) / 8.0;
    }
    s.backoff = 1;

    // The network never reorders a flow's segments, so every outstanding
    // segment sent before this one was dropped. Declare it lost only after
    // kDupAckThreshold later ACKs, as a duplicate-ACK sender would.
    while (!s.outstanding.empty() && s.outstanding.front().id < p.id) {
      s.suspects.push_back(
          Suspect{s.outstanding.front().id, s.acks + kDupAckThreshold - 1});
      s.outstanding.pop_front();
    }
    if (!s.outstanding.empty() && s.outstanding.front().id == p.id) {
      s.outstanding.pop_front();
    } else {
      ++s.counters.spurious_acks;
    }

    bool loss = false;
    while (!s.suspects.empty() && s.suspects.front().lost_at_ack <= s.acks) {
      LossSignal signal{now, s.suspects.front().id, s.next_id};
      s.suspects.pop_front();
      ++s.pending_retx;
      ++s.counters.losses_detected;
      s.cc->OnLoss(signal);
      loss = true;
    }

    AckSample ack;
    ack.rtt = rtt;
    ack.newly_delivered = Segments(1);
    ack.now = now;
    ack.ecn_ce = p.ecn_ce;
    ack.packet_id = p.id;
    ack.inflight = Segments(s.inflight());
    ack.next_packet_id = s.next_id;
    s.cc->OnAck(ack);

    if (s.inflight() > 0) {
      ArmRto(s, now);
    } else {
      s.rto_armed = false;
    }
    TrySend(s, now);
    Record(s, now, rtt, loss ? TraceEvent::kLoss : TraceEvent::kAck);
  }

  void OnRtoEvent(Sender& s, TimeUs now) {
    s.rto_event_pending = false;
    if (!s.rto_armed) return;
    if (now < s.rto_deadline) {
      Packet p;
      p.flow = s.trace.flow_id;
      events_.Push(s.rto_deadline, EventKind::kRtoFire, p);
      s.rto_event_pending = true;
      return;
    }
    s.rto_armed = false;
    uint64_t lost = s.inflight();
    if (lost == 0) return;
    s.pending_retx += lost;
    s.counters.losses_detected += lost;
    s.outstanding.clear();
    s.suspects.clear();
    ++s.counters.rtos;
    s.backoff = std::min(s.backoff * 2, kMaxRtoBackoff);
    s.cc->OnRto(now);
    TrySend(s, now);
    Record(s, now, TimeUs(0), TraceEvent::kRto);
  }

  void Record(Sender& s, TimeUs now, TimeUs rtt, TraceEvent event) {
    if (!options_.record_traces) return;
    TraceRecord r;
    r.t = now;
    r.rtt = rtt;
    r.cwnd = static_cast<uint32_t>(std::min<uint64_t>(s.cc->cwnd().value(), UINT32_MAX));
    r.inflight = static_cast<uint32_t>(s.inflight());
    r.delivered_cum = s.counters.delivered;
    r.mode = s.cc->mode();
    r.event = event;
    s.trace.Append(r);
  }

  // Recounts every flow's in-network segments from the event set and the
  // queue, then checks sent = delivered + dropped + in_network.
  void Audit() {
    std::vector<uint64_t> travelling(senders_.size(), 0);
    for (const Event& e : events_.pending()) {
      if (e.kind == EventKind::kEnqueue || e.kind == EventKind::kAckArrival) {
        ++travelling[e.packet.flow];
      }
    }
    queue_.ForEach([&](const Packet& p) { ++travelling[p.flow]; });
    for (size_t i = 0; i < senders_.size(); ++i) {
      const FlowCounters& c = senders_[i].counters;
      ++stats_.conservation_checks;
      if (travelling[i] != c.in_network ||
          c.sent != c.delivered + c.dropped + c.in_network) {
        throw InvariantViolation("segment conservation violated for flow " +
                                 std::to_string(i));
      }
    }
  }

  const Scenario& scenario_;
  SimOptions options_;
  EventQueue events_;
  BottleneckQueue queue_;
  OccupancyBins bins_;
  std::vector<Sender> senders_;
  InvariantStats stats_;
};

}  // namespace

std::unique_ptr<CongestionController> MakeController(const Scenario& scenario,
                                                     size_t flow_index,
                                                     TimeUs start) {
  switch (scenario.flows.at(flow_index).algorithm) {
    case Algorithm::kDstar:
      return std::make_unique<dstar::DstarController>(start, scenario.dstar);
    case Algorithm::kReno:
      return std::make_unique<baselines::RenoController>();
    case Algorithm::kVegas:
      return std::make_unique<baselines::VegasController>();
    case Algorithm::kBbr:
      return std::make_unique<baselines::SimpleBbrController>();
  }
  throw std::invalid_argument("unknown algorithm");
}

RunResult Run(const Scenario& scenario, const SimOptions& options,
              const ControllerFactory& factory) {
  ValidateOrThrow(scenario);
  Simulation sim(scenario, options, factory);
  return sim.Execute();
}

}  // namespace dstarlab::netsim
