#ifndef DSTARLAB_CORE_UNITS_H_
#define DSTARLAB_CORE_UNITS_H_

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dstarlab {

// Thrown when unit arithmetic would wrap. Treated as fatal by callers.
class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

namespace detail {

// Unsigned integral quantity with checked arithmetic. Tag keeps time and
// segment counts from mixing.
template <typename Tag>
class Quantity {
 public:
  constexpr Quantity() = default;
  constexpr explicit Quantity(uint64_t value) : value_(value) {}

  constexpr uint64_t value() const { return value_; }

  friend constexpr auto operator<=>(Quantity, Quantity) = default;

  constexpr Quantity operator+(Quantity other) const {
    if (value_ > std::numeric_limits<uint64_t>::max() - other.value_) {
      throw ArithmeticOverflow("quantity addition overflow");
    }
    return Quantity(value_ + other.value_);
  }
  constexpr Quantity operator-(Quantity other) const {
    if (other.value_ > value_) {
      throw ArithmeticOverflow("quantity subtraction underflow");
    }
    return Quantity(value_ - other.value_);
  }
  constexpr Quantity operator*(uint64_t factor) const {
    if (factor != 0 && value_ > std::numeric_limits<uint64_t>::max() / factor) {
      throw ArithmeticOverflow("quantity multiplication overflow");
    }
    return Quantity(value_ * factor);
  }
  constexpr Quantity operator/(uint64_t divisor) const {
    return Quantity(value_ / divisor);
  }
  constexpr Quantity& operator+=(Quantity other) {
    return *this = *this + other;
  }
  constexpr Quantity& operator-=(Quantity other) {
    return *this = *this - other;
  }

  // Saturating difference, zero when other exceeds this.
  constexpr Quantity SaturatingSub(Quantity other) const {
    return other.value_ > value_ ? Quantity(0) : Quantity(value_ - other.value_);
  }

 private:
  uint64_t value_ = 0;
};

struct TimeTag {};
struct SegmentTag {};

}  // namespace detail

// Microseconds since simulation start.
using TimeUs = detail::Quantity<detail::TimeTag>;

// Count of MSS-sized segments.
using SegmentCount = detail::Quantity<detail::SegmentTag>;

constexpr TimeUs Microseconds(uint64_t us) { return TimeUs(us); }
constexpr TimeUs Milliseconds(uint64_t ms) { return TimeUs(ms) * 1000; }
constexpr TimeUs Seconds(uint64_t s) { return TimeUs(s) * 1000000; }
constexpr SegmentCount Segments(uint64_t n) { return SegmentCount(n); }

inline double ToSeconds(TimeUs t) { return static_cast<double>(t.value()) / 1e6; }
inline double ToMilliseconds(TimeUs t) {
  return static_cast<double>(t.value()) / 1e3;
}

namespace detail {
inline std::ostream& operator<<(std::ostream& os, TimeUs t) {
  return os << t.value() << "us";
}
inline std::ostream& operator<<(std::ostream& os, SegmentCount s) {
  return os << s.value() << "seg";
}
}  // namespace detail

}  // namespace dstarlab

#endif  // DSTARLAB_CORE_UNITS_H_
