#include "dstarlab/core/rational.h"

#include <limits>
#include <stdexcept>


namespace dstarlab {

namespace {

using u128 = unsigned __int128;

u128 Gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(uint64_t numerator, uint64_t denominator) {
  if (denominator == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  *this = FromWide(numerator, denominator);
}

Rational Rational::FromWide(u128 num, u128 den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (num == 0) return Rational();
  u128 g = Gcd(num, den);
  num /= g;
  den /= g;
  constexpr u128 kMax = std::numeric_limits<uint64_t>::max();
  if (num > kMax || den > kMax) {
    throw ArithmeticOverflow("rational does not fit in 64 bits");
  }
  Rational r;
  r.num_ = static_cast<uint64_t>(num);
  r.den_ = static_cast<uint64_t>(den);
  return r;
}

uint64_t Rational::RoundHalfUp() const {
  // floor((2n + d) / 2d)
  u128 n = static_cast<u128>(num_) * 2 + den_;
  return static_cast<uint64_t>(n / (static_cast<u128>(den_) * 2));
}

Rational Rational::operator+(const Rational& o) const {
  return FromWide(static_cast<u128>(num_) * o.den_ + static_cast<u128>(o.num_) * den_,
                  static_cast<u128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  u128 a = static_cast<u128>(num_) * o.den_;
  u128 b = static_cast<u128>(o.num_) * den_;
  if (b > a) throw ArithmeticOverflow("negative rational");
  return FromWide(a - b, static_cast<u128>(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  // Cross-reduce first to keep the 128-bit products small.
  u128 g1 = Gcd(num_, o.den_);
  u128 g2 = Gcd(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return FromWide((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
  return *this * Rational(o.den_, o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  u128 lhs = static_cast<u128>(a.num_) * b.den_;
  u128 rhs = static_cast<u128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace dstarlab
