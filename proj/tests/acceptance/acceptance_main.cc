// Acceptance checks. Prints one PASS/FAIL line per criterion.
//
// Exit status is 0 once every criterion has been evaluated, even if some
// failed; pass --strict to exit 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dstarlab/cli/scenario_io.h"
#include "dstarlab/metrics/metrics.h"
#include "dstarlab/netsim/model.h"
#include "dstarlab/netsim/simulator.h"
#include "support/properties.h"
#include "support/scenarios.h"

namespace dstarlab::testing {
namespace {

using netsim::FlowTrace;
using netsim::RunResult;
using netsim::Scenario;
using netsim::TraceEvent;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

TimeUs MinRttSample(const FlowTrace& trace) {
  TimeUs best = Seconds(3600);
  for (const auto& r : trace.records) {
    if (r.event != TraceEvent::kRto && r.rtt.value() > 0) best = std::min(best, r.rtt);
  }
  return best;
}

// Measured mean RTT against the shared-queue model, window by window.
Outcome ModelOracle() {
  auto t0 = std::chrono::steady_clock::now();
  Scenario s = Bundled("netem_1flow");
  RunResult result = netsim::Run(s);
  const FlowTrace& trace = result.traces.at(0);
  const TimeUs min_rtt = MinRttSample(trace);
  const double limit_us = 2 * s.serialization_us();

  double worst = 0;
  TimeUs worst_at;
  size_t windows = 0;
  size_t idx = 0;
  const auto& rec = trace.records;
  for (TimeUs begin = s.warmup; begin + Seconds(1) <= s.sim_duration; begin += Seconds(1)) {
    const TimeUs end = begin + Seconds(1);
    while (idx < rec.size() && rec[idx].t < begin) ++idx;
    if (idx == 0 || idx >= rec.size()) continue;
    // Inflight only changes when a record is written, so it is piecewise
    // constant between records.
    double area = 0;
    TimeUs cursor = begin;
    uint32_t level = rec[idx - 1].inflight;
    uint64_t delivered_before = rec[idx - 1].delivered_cum;
    uint64_t delivered_after = delivered_before;
    double rtt_sum = 0;
    uint64_t rtt_count = 0;
    size_t j = idx;
    for (; j < rec.size() && rec[j].t < end; ++j) {
      area += static_cast<double>(level) * static_cast<double>((rec[j].t - cursor).value());
      cursor = rec[j].t;
      level = rec[j].inflight;
      delivered_after = rec[j].delivered_cum;
      if (rec[j].event != TraceEvent::kRto && rec[j].rtt.value() > 0) {
        rtt_sum += static_cast<double>(rec[j].rtt.value());
        ++rtt_count;
      }
    }
    area += static_cast<double>(level) * static_cast<double>((end - cursor).value());
    if (rtt_count == 0) continue;
    netsim::FlowSnapshot snap;
    snap.inflight_seg = area / 1e6;
    snap.rate_pps = static_cast<double>(delivered_after - delivered_before);
    snap.bdp_seg = snap.rate_pps * ToSeconds(min_rtt);
    TimeUs mins[] = {min_rtt};
    double model = netsim::ModelRtt(std::span(&snap, 1), mins).at(0);
    double measured = rtt_sum / static_cast<double>(rtt_count);
    double diff = std::abs(measured - model);
    if (diff > worst) {
      worst = diff;
      worst_at = begin;
    }
    ++windows;
  }
  double secs = Elapsed(t0);
  Outcome o;
  o.pass = windows > 0 && worst <= limit_us && secs < 30;
  o.detail = Fmt("worst |measured - model| %.2f us (window at %.0f s) over %zu windows, limit %.0f us; %.1f s",
                 worst, ToSeconds(worst_at), windows, limit_us, secs);
  return o;
}

uint64_t P95AfterWarmup(const RunResult& r, const Scenario& s) {
  std::vector<TimeUs> samples;
  for (const auto& t : r.traces) {
    auto v = metrics::RttSamples(t, s.warmup);
    samples.insert(samples.end(), v.begin(), v.end());
  }
  return metrics::Percentile(samples, 0.95).value();
}

Outcome SteadyLatency() {
  Scenario d = Bundled("netem_1flow");
  Scenario reno = Bundled("netem_1flow_reno");
  uint64_t d95 = P95AfterWarmup(netsim::Run(d), d);
  uint64_t r95 = P95AfterWarmup(netsim::Run(reno), reno);
  Outcome o;
  o.pass = d95 <= 33000 && r95 >= 50000;
  o.detail = Fmt("D* p95 %.3f ms (limit 33), Reno p95 %.3f ms (floor 50)", d95 / 1e3, r95 / 1e3);
  return o;
}

Outcome Fairness() {
  auto t0 = std::chrono::steady_clock::now();
  Scenario s = Bundled("netem_32");
  RunResult r = netsim::Run(s);
  auto report = metrics::Fairness(r.traces, s);
  double util = metrics::Utilization(r.traces, s, s.warmup, s.sim_duration);
  double secs = Elapsed(t0);
  Outcome o;
  o.pass = report.jain_index >= 0.99 && util >= 0.9 && secs < 300;
  o.detail = Fmt("%zu flows, seed %llu: jain %.4f (floor 0.99), utilization %.4f (floor 0.9); %.1f s",
                 r.traces.size(), static_cast<unsigned long long>(s.seed), report.jain_index, util,
                 secs);
  return o;
}

double DeliveredBits(const FlowTrace& t, TimeUs begin, TimeUs end, uint32_t mss) {
  uint64_t before = 0, after = 0;
  for (const auto& r : t.records) {
    if (r.t < begin) before = r.delivered_cum;
    if (r.t < end) after = r.delivered_cum;
  }
  return static_cast<double>(after - before) * mss * 8.0;
}

Outcome DifferentRtt() {
  Scenario s = Bundled("diff_rtt");
  RunResult r = netsim::Run(s);
  const FlowTrace& f0 = r.traces.at(0);
  const FlowTrace& f1 = r.traces.at(1);
  const TimeUs begin = std::max(f0.start, f1.start) + s.warmup;
  double ratio = DeliveredBits(f1, begin, s.sim_duration, s.mss_bytes) /
                 DeliveredBits(f0, begin, s.sim_duration, s.mss_bytes);
  bool pass = std::abs(ratio - 2.0) <= 0.6;
  std::string rtts;
  for (const FlowTrace* f : {&f0, &f1}) {
    uint64_t p50 = metrics::Percentile(metrics::RttSamples(*f, f->start + s.warmup), 0.5).value();
    double rel = static_cast<double>(p50) / static_cast<double>(f->base_rtt.value());
    pass = pass && rel >= 1.0 && rel <= 1.2;
    rtts += Fmt(", flow %u p50 %.2f ms (%.3fx base)", f->flow_id, p50 / 1e3, rel);
  }
  Outcome o;
  o.pass = pass;
  o.detail = Fmt("rate ratio 60ms/30ms %.3f (2.0 +- 0.6)", ratio) + rtts;
  return o;
}

Outcome DrainCycle() {
  Scenario s = Bundled("drain_timeout");
  RunResult r = netsim::Run(s);
  const FlowTrace& t = r.traces.at(0);
  auto runs = ModeRuns(t);
  const double base = static_cast<double>(t.base_rtt.value());
  const TimeUs timeout = s.dstar.min_rtt_timeout;
  const TimeUs floor_rtt = t.base_rtt + TimeUs(static_cast<uint64_t>(std::ceil(2 * s.serialization_us())));

  // The filter's minimum last moved when its final value was first seen.
  TimeUs min_value = Seconds(3600);
  TimeUs last_update;
  size_t drains = 0;
  Outcome o;
  o.pass = true;
  std::string why;
  size_t r_index = 0;
  for (const auto& rec : t.records) {
    while (r_index + 1 < runs.size() && runs[r_index + 1].begin <= rec.t) {
      ++r_index;
      const ModeRun& run = runs[r_index];
      if (run.mode != ModeTag::kDrain) continue;
      ++drains;
      const ModeRun& g2 = runs[r_index - 1];
      const ModeRun& g1 = runs[r_index - 2];
      const ModeRun& next = runs.at(r_index + 1);
      TimeUs cycle = g2.end - g1.begin;
      TimeUs stale = run.begin - last_update;
      double dur = static_cast<double>((run.end - run.begin).value());
      bool ok = g2.mode == ModeTag::kGain2 && g1.mode == ModeTag::kGain1 &&
                stale > timeout && stale <= timeout + cycle && run.min_cwnd == 4 &&
                run.max_cwnd == 4 && dur > 2 * base && dur <= 3 * base &&
                run.min_rtt <= floor_rtt && next.mode == ModeTag::kGain1 &&
                runs.at(r_index + 2).mode == ModeTag::kGain2;
      why += Fmt(" [DRAIN at %.3f s: stale %.3f s (cycle %.0f ms), %.1f ms at cwnd %u, min RTT %.3f ms]",
                 ToSeconds(run.begin), ToSeconds(stale), ToMilliseconds(cycle), dur / 1e3,
                 run.max_cwnd, ToMilliseconds(run.min_rtt));
      o.pass = o.pass && ok;
      // DRAIN restarts the filter from the latest sample.
      min_value = Seconds(3600);
    }
    if (rec.event != TraceEvent::kRto && rec.rtt.value() > 0 && rec.rtt < min_value) {
      min_value = rec.rtt;
      last_update = rec.t;
    }
  }
  o.pass = o.pass && drains >= 2;
  o.detail = Fmt("%zu DRAIN cycles;", drains) + why;
  return o;
}

Outcome SlowStartExit() {
  Scenario s = Bundled("slowstart_exit");
  RunResult r = netsim::Run(s);
  const FlowTrace& t = r.traces.at(0);
  const double bdp = static_cast<double>(s.BdpSegments(t.base_rtt).value());
  const netsim::TraceRecord* exit = nullptr;
  for (const auto& rec : t.records) {
    if (rec.mode != ModeTag::kSlowStart) {
      exit = &rec;
      break;
    }
  }
  Outcome o;
  if (!exit) {
    o.detail = "slow start never exited";
    return o;
  }
  double ratio = exit->cwnd / bdp;
  o.pass = ratio >= 0.5 && ratio <= 2.0 && r.bottleneck_drops == 0 && t.losses == 0 &&
           s.queue_capacity.value() >= bdp;
  o.detail = Fmt("exit at %.3f s with cwnd %u = %.3fx BDP %.0f, queue %llu seg, %llu drops, %llu losses",
                 ToSeconds(exit->t), exit->cwnd, ratio, bdp,
                 static_cast<unsigned long long>(s.queue_capacity.value()),
                 static_cast<unsigned long long>(r.bottleneck_drops),
                 static_cast<unsigned long long>(t.losses));
  return o;
}

Outcome VegasQueue() {
  Scenario s = Bundled("netem_1flow_vegas");
  RunResult r = netsim::Run(s);
  double lo = 1e9, hi = 0, sum = 0;
  size_t n = 0;
  for (const auto& q : r.queue) {
    if (q.t < s.warmup) continue;
    lo = std::min(lo, q.mean_occupancy);
    hi = std::max(hi, q.mean_occupancy);
    sum += q.mean_occupancy;
    ++n;
  }
  Outcome o;
  o.pass = n > 0 && lo >= 1.0 && hi <= 5.0;
  o.detail = Fmt("%zu bins of %.0f ms after warmup: mean occupancy %.2f, range [%.2f, %.2f] (band [1, 5])",
                 n, ToMilliseconds(s.queue_sample_interval), n ? sum / n : 0.0, lo, hi);
  return o;
}

Outcome Determinism() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  o.pass = true;
  size_t count = 0;
  std::string mismatched;
  for (const auto& path : cli::ListScenarios(BundledScenarioDir())) {
    Scenario s = cli::LoadScenario(path);
    uint64_t a = TraceCsvHash(netsim::Run(s).traces);
    uint64_t b = TraceCsvHash(netsim::Run(s).traces);
    ++count;
    if (a != b) {
      o.pass = false;
      mismatched += " " + s.id;
    }
  }
  o.pass = o.pass && count > 0;
  o.detail = Fmt("%zu bundled scenarios run twice; CSV digests %s; %.1f s", count,
                 mismatched.empty() ? "identical" : ("differ:" + mismatched).c_str(), Elapsed(t0));
  return o;
}

Outcome InvariantSuites() {
  auto t0 = std::chrono::steady_clock::now();
  constexpr uint64_t kCases = 10000;
  auto reports = RunInvariantSuites(kCases, 20261014);
  Outcome o;
  o.pass = true;
  std::string parts;
  for (const auto& r : reports) {
    o.pass = o.pass && r.ok(kCases);
    parts += Fmt(" %s %llu cases/%llu checks%s;", r.name.c_str(),
                 static_cast<unsigned long long>(r.cases),
                 static_cast<unsigned long long>(r.checks),
                 r.failures ? (" FAILED: " + r.first_failure).c_str() : "");
  }
  o.detail = parts + Fmt(" %.1f s", Elapsed(t0));
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace dstarlab::testing

int main(int argc, char** argv) {
  using namespace dstarlab::testing;
  bool strict = false;
  std::vector<std::string> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) {
      strict = true;
    } else {
      only.push_back(argv[i]);
    }
  }
  const Criterion criteria[] = {
      {"rtt-model-oracle", ModelOracle},
      {"steady-latency", SteadyLatency},
      {"fairness-32", Fairness},
      {"different-rtt", DifferentRtt},
      {"drain-cycle", DrainCycle},
      {"slow-start-exit", SlowStartExit},
      {"vegas-queue", VegasQueue},
      {"determinism", Determinism},
      {"invariant-suites", InvariantSuites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return strict && failed > 0 ? 1 : 0;
}
