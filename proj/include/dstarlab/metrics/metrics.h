#ifndef DSTARLAB_METRICS_METRICS_H_
#define DSTARLAB_METRICS_METRICS_H_

#include <span>
#include <stdexcept>
#include <vector>

#include "dstarlab/netsim/scenario.h"
#include "dstarlab/netsim/trace.h"

namespace dstarlab::metrics {

class MetricsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SeriesPoint {
  TimeUs t;      // bucket start
  double value;  // bits/s for rate series
};

struct CdfPoint {
  TimeUs value;
  double fraction;  // share of samples <= value
};

struct FairnessReport {
  std::vector<double> per_flow_mean_rate_bps;
  double jain_index = 0;
};

// (sum x)^2 / (n * sum x^2). Throws MetricsError for empty or all-zero input
// and for negative rates.
double JainIndex(std::span<const double> rates);

// Delivered bits per second in consecutive buckets starting at t = 0.
std::vector<SeriesPoint> ThroughputSeries(const netsim::FlowTrace& trace,
                                          TimeUs bucket, uint32_t mss_bytes);

// RTT samples (ACK records only) with t > after.
std::vector<TimeUs> RttSamples(const netsim::FlowTrace& trace, TimeUs after);

// Empirical CDF over every flow's RTT samples with t > after; one point per
// distinct value. Throws MetricsError when no sample qualifies.
std::vector<CdfPoint> RttCdf(std::span<const netsim::FlowTrace> traces,
                             TimeUs after);

// Nearest-rank percentile, q in (0, 1]. Sorts a copy.
TimeUs Percentile(std::vector<TimeUs> samples, double q);

// Aggregate delivered bits in [begin, end) over bottleneck capacity.
double Utilization(std::span<const netsim::FlowTrace> traces,
                   const netsim::Scenario& scenario, TimeUs begin, TimeUs end);

// Delivered bits over the flow's active period (start to its stop or the
// end of the run).
double MeanRateBps(const netsim::FlowTrace& trace, const netsim::Scenario& scenario);

FairnessReport Fairness(std::span<const netsim::FlowTrace> traces,
                        const netsim::Scenario& scenario);

}  // namespace dstarlab::metrics

#endif  // DSTARLAB_METRICS_METRICS_H_
