#ifndef DSTARLAB_CORE_RATIONAL_H_
#define DSTARLAB_CORE_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "dstarlab/core/units.h"

namespace dstarlab {

// Non-negative exact fraction kept in lowest terms. Intermediate products
// use 128-bit arithmetic; a result that does not fit 64 bits after reduction
// throws ArithmeticOverflow.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(uint64_t numerator, uint64_t denominator);
  static Rational Integer(uint64_t n) { return Rational(n, 1); }

  uint64_t numerator() const { return num_; }
  uint64_t denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  double ToDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  // Nearest integer, halves rounded up.
  uint64_t RoundHalfUp() const;
  uint64_t Floor() const { return num_ / den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;  // throws if negative
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws on zero divisor

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string ToString() const;

 private:
  static Rational FromWide(unsigned __int128 num, unsigned __int128 den);

  uint64_t num_ = 0;
  uint64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.ToString();
}

}  // namespace dstarlab

#endif  // DSTARLAB_CORE_RATIONAL_H_
