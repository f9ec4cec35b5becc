#include "dstarlab/netsim/model.h"

namespace dstarlab::netsim {

std::vector<double> ModelRtt(std::span<const FlowSnapshot> flows,
                             std::span<const TimeUs> min_rtts) {
  if (flows.size() != min_rtts.size()) {
    throw std::invalid_argument("one min RTT per flow required");
  }
  double excess = 0;
  double rate = 0;
  for (const auto& f : flows) {
    excess += f.inflight_seg - f.bdp_seg;
    rate += f.rate_pps;
  }
  if (!(rate > 0)) throw std::invalid_argument("zero aggregate delivery rate");
  const double queue_us = excess / rate * 1e6;
  std::vector<double> out;
  out.reserve(flows.size());
  for (TimeUs m : min_rtts) out.push_back(static_cast<double>(m.value()) + queue_us);
  return out;
}

}  // namespace dstarlab::netsim
