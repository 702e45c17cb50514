#include "binexceed/numeric/enclosure.hpp"

#include <algorithm>
#include <array>
#include <ostream>

#include "binexceed/errors.hpp"

namespace binexceed::numeric {

Enclosure::Enclosure(BigRational lo, BigRational hi, int precision_bits)
    : lo_(std::move(lo)), hi_(std::move(hi)), precision_bits_(precision_bits) {
  if (hi_ < lo_) throw DomainError("enclosure with lo > hi: [" + lo_.str() + ", " + hi_.str() + "]");
}

int Enclosure::combine_bits(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  return std::min(a, b);
}

Enclosure Enclosure::rounded_outward(int grid_bits) const {
  BigInt scale = 1;
  BigRational unit;
  if (grid_bits >= 0) {
    scale <<= static_cast<mp_bitcnt_t>(grid_bits);
    unit = BigRational(BigInt(1), scale);
  } else {
    scale <<= static_cast<mp_bitcnt_t>(-grid_bits);
    unit = BigRational(scale);
  }
  const BigRational lo_units = lo_ / unit;
  const BigRational hi_units = hi_ / unit;
  return Enclosure(BigRational(lo_units.floor()) * unit, BigRational(hi_units.ceil()) * unit,
                   precision_bits_);
}

Enclosure& Enclosure::operator+=(const Enclosure& rhs) {
  lo_ += rhs.lo_;
  hi_ += rhs.hi_;
  precision_bits_ = combine_bits(precision_bits_, rhs.precision_bits_);
  return *this;
}

Enclosure& Enclosure::operator-=(const Enclosure& rhs) {
  lo_ -= rhs.hi_;
  hi_ -= rhs.lo_;
  precision_bits_ = combine_bits(precision_bits_, rhs.precision_bits_);
  return *this;
}

Enclosure& Enclosure::operator*=(const Enclosure& rhs) {
  if (lo_.sign() >= 0 && rhs.lo_.sign() >= 0) {
    lo_ *= rhs.lo_;
    hi_ *= rhs.hi_;
  } else {
    const std::array<BigRational, 4> products = {lo_ * rhs.lo_, lo_ * rhs.hi_, hi_ * rhs.lo_,
                                                 hi_ * rhs.hi_};
    lo_ = *std::min_element(products.begin(), products.end());
    hi_ = *std::max_element(products.begin(), products.end());
  }
  precision_bits_ = combine_bits(precision_bits_, rhs.precision_bits_);
  return *this;
}

Enclosure& Enclosure::operator/=(const Enclosure& rhs) {
  if (rhs.lo_.sign() <= 0 && rhs.hi_.sign() >= 0) {
    throw DomainError("interval division by an enclosure containing zero");
  }
  const int bits = combine_bits(precision_bits_, rhs.precision_bits_);
  *this *= Enclosure(rhs.hi_.reciprocal(), rhs.lo_.reciprocal(), rhs.precision_bits_);
  precision_bits_ = bits;
  return *this;
}

Enclosure operator-(const Enclosure& a) { return Enclosure(-a.hi_, -a.lo_, a.precision_bits_); }

Enclosure Enclosure::pow(unsigned exponent) const {
  if (exponent == 0) return Enclosure(BigRational(1));
  const long e = static_cast<long>(exponent);
  if (lo_.sign() >= 0) return Enclosure(lo_.pow(e), hi_.pow(e), precision_bits_);
  if (hi_.sign() <= 0) {
    if (exponent % 2 == 0) return Enclosure(hi_.pow(e), lo_.pow(e), precision_bits_);
    return Enclosure(lo_.pow(e), hi_.pow(e), precision_bits_);
  }
  if (exponent % 2 == 1) return Enclosure(lo_.pow(e), hi_.pow(e), precision_bits_);
  return Enclosure(BigRational(0), std::max(lo_.pow(e), hi_.pow(e)), precision_bits_);
}

std::ostream& operator<<(std::ostream& os, const Enclosure& e) {
  return os << "[" << e.lo() << ", " << e.hi() << "]";
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  const int bits = (a.precision_bits() == 0)   ? b.precision_bits()
                   : (b.precision_bits() == 0) ? a.precision_bits()
                                               : std::min(a.precision_bits(), b.precision_bits());
  return Enclosure(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()), bits);
}

}  // namespace binexceed::numeric
