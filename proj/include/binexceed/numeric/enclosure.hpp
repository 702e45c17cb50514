#pragma once

#include <iosfwd>

#include "binexceed/numeric/rational.hpp"

namespace binexceed::numeric {

/// Certified interval [lo, hi] with exact rational endpoints. Interval
/// arithmetic on enclosures is exact in the endpoints, so soundness only
/// depends on the constructors that produce them.
class Enclosure {
 public:
  /// Degenerate interval [v, v]. precision_bits 0 marks an exact value.
  Enclosure(const BigRational& value) : lo_(value), hi_(value) {}  // NOLINT
  Enclosure(BigRational lo, BigRational hi, int precision_bits);

  const BigRational& lo() const { return lo_; }
  const BigRational& hi() const { return hi_; }
  int precision_bits() const { return precision_bits_; }

  BigRational width() const { return hi_ - lo_; }
  BigRational midpoint() const { return (lo_ + hi_) / BigRational(2); }
  bool is_exact() const { return lo_ == hi_; }

  bool contains(const BigRational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Enclosure& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool overlaps(const Enclosure& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }

  /// Widen the endpoints outward to multiples of 2^-grid_bits.
  Enclosure rounded_outward(int grid_bits) const;

  Enclosure& operator+=(const Enclosure& rhs);
  Enclosure& operator-=(const Enclosure& rhs);
  Enclosure& operator*=(const Enclosure& rhs);
  /// Throws DomainError when rhs contains zero.
  Enclosure& operator/=(const Enclosure& rhs);

  friend Enclosure operator+(Enclosure a, const Enclosure& b) { return a += b; }
  friend Enclosure operator-(Enclosure a, const Enclosure& b) { return a -= b; }
  friend Enclosure operator*(Enclosure a, const Enclosure& b) { return a *= b; }
  friend Enclosure operator/(Enclosure a, const Enclosure& b) { return a /= b; }
  friend Enclosure operator-(const Enclosure& a);

  /// Integer power of an interval (even powers of intervals straddling 0
  /// start at 0).
  Enclosure pow(unsigned exponent) const;

  friend bool operator==(const Enclosure& a, const Enclosure& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Enclosure& e);

 private:
  static int combine_bits(int a, int b);

  BigRational lo_;
  BigRational hi_;
  int precision_bits_ = 0;
};

Enclosure hull(const Enclosure& a, const Enclosure& b);

}  // namespace binexceed::numeric
