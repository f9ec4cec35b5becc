#include "dstarlab/metrics/metrics.h"

#include <algorithm>
#include <cmath>

namespace dstarlab::metrics {

using netsim::FlowTrace;
using netsim::TraceEvent;

double JainIndex(std::span<const double> rates) {
  if (rates.empty()) throw MetricsError("undefined fairness: no flows");
  double sum = 0;
  double sum_sq = 0;
  for (double x : rates) {
    if (x < 0 || !std::isfinite(x)) throw MetricsError("rates must be finite and non-negative");
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0) throw MetricsError("undefined fairness");
  return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

std::vector<SeriesPoint> ThroughputSeries(const FlowTrace& trace, TimeUs bucket,
                                          uint32_t mss_bytes) {
  if (bucket.value() == 0) throw MetricsError("bucket must be positive");
  std::vector<SeriesPoint> out;
  if (trace.records.empty()) return out;
  const uint64_t width = bucket.value();
  const size_t buckets = trace.records.back().t.value() / width + 1;
  std::vector<uint64_t> segments(buckets, 0);
  uint64_t previous = 0;
  for (const auto& r : trace.records) {
    segments[r.t.value() / width] += r.delivered_cum - previous;
    previous = r.delivered_cum;
  }
  out.reserve(buckets);
  const double seconds = static_cast<double>(width) / 1e6;
  for (size_t i = 0; i < buckets; ++i) {
    double bits = static_cast<double>(segments[i]) * mss_bytes * 8.0;
    out.push_back(SeriesPoint{TimeUs(i * width), bits / seconds});
  }
  return out;
}

std::vector<TimeUs> RttSamples(const FlowTrace& trace, TimeUs after) {
  std::vector<TimeUs> out;
  for (const auto& r : trace.records) {
    if (r.t > after && r.event != TraceEvent::kRto && r.rtt.value() > 0) {
      out.push_back(r.rtt);
    }
  }
  return out;
}

std::vector<CdfPoint> RttCdf(std::span<const FlowTrace> traces, TimeUs after) {
  std::vector<TimeUs> all;
  for (const auto& t : traces) {
    auto s = RttSamples(t, after);
    all.insert(all.end(), s.begin(), s.end());
  }
  if (all.empty()) throw MetricsError("no RTT samples after warmup");
  std::sort(all.begin(), all.end());
  std::vector<CdfPoint> out;
  const double n = static_cast<double>(all.size());
  for (size_t i = 0; i < all.size(); ++i) {
    if (i + 1 < all.size() && all[i + 1] == all[i]) continue;
    out.push_back(CdfPoint{all[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

TimeUs Percentile(std::vector<TimeUs> samples, double q) {
  if (samples.empty()) throw MetricsError("percentile of empty sample");
  if (!(q > 0 && q <= 1)) throw MetricsError("percentile out of range");
  size_t rank = static_cast<size_t>(std::ceil(q * static_cast<double>(samples.size())));
  rank = std::clamp<size_t>(rank, 1, samples.size());
  std::nth_element(samples.begin(), samples.begin() + (rank - 1), samples.end());
  return samples[rank - 1];
}

double Utilization(std::span<const FlowTrace> traces, const netsim::Scenario& scenario,
                   TimeUs begin, TimeUs end) {
  if (end <= begin) throw MetricsError("empty utilization window");
  uint64_t segments = 0;
  for (const auto& trace : traces) {
    uint64_t previous = 0;
    for (const auto& r : trace.records) {
      if (r.t >= begin && r.t < end) segments += r.delivered_cum - previous;
      previous = r.delivered_cum;
    }
  }
  double bits = static_cast<double>(segments) * scenario.mss_bytes * 8.0;
  double capacity = static_cast<double>(scenario.bottleneck_rate_bps) *
                    ToSeconds(end - begin);
  return bits / capacity;
}

double MeanRateBps(const FlowTrace& trace, const netsim::Scenario& scenario) {
  TimeUs stop = scenario.sim_duration;
  if (trace.flow_id < scenario.flows.size()) {
    const auto& spec = scenario.flows[trace.flow_id];
    if (spec.duration) stop = std::min(stop, trace.start + *spec.duration);
  }
  if (stop <= trace.start) return 0;
  uint64_t delivered = trace.records.empty() ? 0 : trace.records.back().delivered_cum;
  return static_cast<double>(delivered) * scenario.mss_bytes * 8.0 /
         ToSeconds(stop - trace.start);
}

FairnessReport Fairness(std::span<const FlowTrace> traces,
                        const netsim::Scenario& scenario) {
  FairnessReport report;
  for (const auto& t : traces) {
    report.per_flow_mean_rate_bps.push_back(MeanRateBps(t, scenario));
  }
  report.jain_index = JainIndex(report.per_flow_mean_rate_bps);
  return report;
}

}  // namespace dstarlab::metrics
