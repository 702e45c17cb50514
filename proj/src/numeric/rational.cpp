#include "binexceed/numeric/rational.hpp"

#include <cctype>
#include <ostream>

#include "binexceed/errors.hpp"

namespace binexceed::numeric {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw DomainError("malformed integer: '" + std::string(s) + "'");
  BigInt v(std::string(s), 10);
  return negative ? BigInt(-v) : v;
}

}  // namespace

BigRational::BigRational(long long value) {
  // mpz_class has no long long constructor on LP64 targets other than via string.
  value_ = mpq_class(BigInt(std::to_string(value), 10));
}

BigRational::BigRational(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DomainError("zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

BigRational::BigRational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

BigRational BigRational::parse(std::string_view text) {
  if (text.empty()) throw DomainError("empty rational");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw DomainError("malformed denominator: '" + std::string(den_text) + "'");
    return BigRational(num, BigInt(std::string(den_text), 10));
  }

  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      negative = whole.front() == '-';
      whole.remove_prefix(1);
    }
    if (frac.empty()) throw DomainError("malformed decimal: '" + std::string(text) + "'");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
      throw DomainError("malformed decimal: '" + std::string(text) + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    BigInt num(digits.empty() ? std::string("0") : digits, 10);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    if (negative) num = -num;
    return BigRational(num, den);
  }

  return BigRational(parse_integer(text));
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

BigInt BigRational::floor() const {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

BigInt BigRational::ceil() const {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

BigRational BigRational::abs() const { return BigRational(mpq_class(::abs(value_))); }

BigRational BigRational::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  mpq_class out;
  mpq_inv(out.get_mpq_t(), value_.get_mpq_t());
  return BigRational(out);
}

BigRational BigRational::pow(long exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  mpq_class out;
  mpz_pow_ui(out.get_num_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(out.get_den_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  // Powers of coprime integers stay coprime; no canonicalize needed.
  return BigRational(out);
}

std::string BigRational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string BigRational::fraction_str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string BigRational::to_decimal(int digits) const {
  if (digits < 0) throw DomainError("negative digit count");
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));

  const BigInt num = ::abs(value_.get_num()) * scale;
  const BigInt& den = value_.get_den();
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  const int half = cmp(BigInt(2 * r), den);
  if (half > 0 || (half == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;

  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  const bool negative = sign() < 0 && q != 0;
  return negative ? "-" + body : body;
}

std::ostream& operator<<(std::ostream& os, const BigRational& v) { return os << v.str(); }

BigRational pow(const BigRational& base, long exponent) { return base.pow(exponent); }
BigRational abs(const BigRational& v) { return v.abs(); }

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace binexceed::numeric
