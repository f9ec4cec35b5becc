#ifndef DSTARLAB_NETSIM_MODEL_H_
#define DSTARLAB_NETSIM_MODEL_H_

#include <span>
#include <stdexcept>
#include <vector>

#include "dstarlab/core/units.h"

namespace dstarlab::netsim {

// One flow's state over an observation interval.
struct FlowSnapshot {
  double inflight_seg = 0;
  double bdp_seg = 0;
  double rate_pps = 0;
};

// Shared-bottleneck RTT model: each flow's RTT is its own min RTT plus the
// common queueing delay sum(inflight - bdp) / sum(rate). Results are in
// microseconds. Throws std::invalid_argument if the aggregate rate is zero
// or the spans differ in length.
std::vector<double> ModelRtt(std::span<const FlowSnapshot> flows,
                             std::span<const TimeUs> min_rtts);

}  // namespace dstarlab::netsim

#endif  // DSTARLAB_NETSIM_MODEL_H_
