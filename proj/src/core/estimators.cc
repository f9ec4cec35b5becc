#include "dstarlab/core/estimators.h"

namespace dstarlab {

MinRttFilter UpdateMinRtt(MinRttFilter filter, TimeUs sample, TimeUs now) {
  if (sample.value() == 0) {
    throw std::invalid_argument("RTT sample must be positive");
  }
  if (filter.empty() || sample < filter.value()) {
    filter.min_rtt = sample;
    filter.last_update = now;
  }
  return filter;
}

MinRttFilter ResetMinRtt(TimeUs sample, TimeUs now) {
  return MinRttFilter{sample, now};
}

RatePps DeliveryRate(SegmentCount delivered, TimeUs elapsed) {
  if (elapsed.value() == 0) throw ZeroIntervalError();
  return RatePps(Rational(delivered.value(), 1) * Rational(1000000, elapsed.value()));
}

SegmentCount ComputeBdp(const RatePps& rate, TimeUs min_rtt) {
  if (min_rtt.value() == 0) {
    throw std::invalid_argument("min RTT must be positive");
  }
  Rational segments = rate.per_second() * Rational(min_rtt.value(), 1000000);
  return SegmentCount(segments.RoundHalfUp());
}

}  // namespace dstarlab
