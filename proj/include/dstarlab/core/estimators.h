#ifndef DSTARLAB_CORE_ESTIMATORS_H_
#define DSTARLAB_CORE_ESTIMATORS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "dstarlab/core/rational.h"
#include "dstarlab/core/units.h"

namespace dstarlab {

// Segments per second, exact.
class RatePps {
 public:
  RatePps() = default;
  explicit RatePps(Rational per_second) : per_second_(per_second) {}

  const Rational& per_second() const { return per_second_; }
  double ToDouble() const { return per_second_.ToDouble(); }
  bool is_zero() const { return per_second_.is_zero(); }

  friend bool operator==(const RatePps&, const RatePps&) = default;
  friend auto operator<=>(const RatePps& a, const RatePps& b) {
    return a.per_second_ <=> b.per_second_;
  }

 private:
  Rational per_second_;
};

// Minimum RTT seen since the last reset. There is no sliding window: the
// minimum only moves down, or is replaced by an explicit Reset.
struct MinRttFilter {
  std::optional<TimeUs> min_rtt;
  // When min_rtt last decreased or was reset.
  TimeUs last_update;

  bool empty() const { return !min_rtt.has_value(); }
  TimeUs value() const { return min_rtt.value(); }
};

// Feedback for one acknowledged segment.
struct AckSample {
  TimeUs rtt;
  SegmentCount newly_delivered{1};
  TimeUs now;
  bool ecn_ce = false;
  // Transmission id of the acknowledged segment.
  uint64_t packet_id = 0;
  // Sender's outstanding segments once this ACK is accounted for.
  SegmentCount inflight;
  // Id the sender's next transmission will receive. An ACK for an id at or
  // above a remembered value closes the round that began when it was taken.
  uint64_t next_packet_id = 0;
};

struct BdpEstimate {
  SegmentCount bdp;
  SegmentCount last_bdp;

  friend bool operator==(const BdpEstimate&, const BdpEstimate&) = default;
};

class ZeroIntervalError : public std::invalid_argument {
 public:
  ZeroIntervalError() : std::invalid_argument("zero measurement interval") {}
};

MinRttFilter UpdateMinRtt(MinRttFilter filter, TimeUs sample, TimeUs now);

// Replaces the minimum outright and restarts its staleness clock.
MinRttFilter ResetMinRtt(TimeUs sample, TimeUs now);

// delivered / elapsed, in segments per second.
RatePps DeliveryRate(SegmentCount delivered, TimeUs elapsed);

// rate * min_rtt rounded half-up to whole segments.
SegmentCount ComputeBdp(const RatePps& rate, TimeUs min_rtt);

}  // namespace dstarlab

#endif  // DSTARLAB_CORE_ESTIMATORS_H_
