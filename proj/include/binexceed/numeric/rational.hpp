#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace binexceed::numeric {

using BigInt = mpz_class;

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator. Arithmetic never rounds.
class BigRational {
 public:
  BigRational() = default;
  BigRational(int value) : value_(value) {}                 // NOLINT
  BigRational(long value) : value_(value) {}                // NOLINT
  BigRational(long long value);                             // NOLINT
  BigRational(const BigInt& value) : value_(value) {}       // NOLINT
  BigRational(const BigInt& numerator, const BigInt& denominator);
  explicit BigRational(const mpq_class& value);

  /// Accepts "num/den", an integer, or a finite decimal such as "-0.057".
  /// Throws DomainError on malformed input or a zero denominator.
  static BigRational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  BigInt floor() const;
  BigInt ceil() const;
  BigRational abs() const;
  BigRational reciprocal() const;

  /// Integer power; negative exponents invert (DomainError on 0^-k).
  BigRational pow(long exponent) const;

  /// "num/den", or just "num" when the value is an integer.
  std::string str() const;
  /// Always "num/den", including integers ("3/1", "0/1").
  std::string fraction_str() const;
  /// Decimal with exactly `digits` fractional digits, rounded half-to-even
  /// from the exact value.
  std::string to_decimal(int digits) const;

  BigRational& operator+=(const BigRational& rhs) { value_ += rhs.value_; return *this; }
  BigRational& operator-=(const BigRational& rhs) { value_ -= rhs.value_; return *this; }
  BigRational& operator*=(const BigRational& rhs) { value_ *= rhs.value_; return *this; }
  BigRational& operator/=(const BigRational& rhs);

  friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
  friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
  friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
  friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }
  friend BigRational operator-(const BigRational& v) { return BigRational(mpq_class(-v.value_)); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& v);

 private:
  mpq_class value_;
};

BigRational pow(const BigRational& base, long exponent);
BigRational abs(const BigRational& v);

/// Number of bits in |v| (0 for v == 0).
std::size_t bit_length(const BigInt& v);

}  // namespace binexceed::numeric
