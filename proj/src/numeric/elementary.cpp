#include "binexceed/numeric/elementary.hpp"

#include <map>
#include <mutex>
#include <string>

#include "binexceed/errors.hpp"

namespace binexceed::numeric {

namespace {

// Fixed-point bounds: the real value v satisfies lo <= v * 2^W <= hi.
struct FixedBounds {
  BigInt lo;
  BigInt hi;
};

void check_precision(int bits) {
  if (bits < kMinPrecisionBits || bits > kMaxPrecisionBits) {
    throw PreconditionError("precision_bits must lie in [" + std::to_string(kMinPrecisionBits) + ", " +
                            std::to_string(kMaxPrecisionBits) + "], got " + std::to_string(bits));
  }
}

BigInt fdiv(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

BigInt cdiv(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

BigInt shifted(const BigInt& v, mp_bitcnt_t w) {
  BigInt out;
  mpz_mul_2exp(out.get_mpz_t(), v.get_mpz_t(), w);
  return out;
}

BigInt pow2(mp_bitcnt_t w) { return shifted(BigInt(1), w); }

int guard_bits(int bits) { return 24 + static_cast<int>(bit_length(BigInt(bits))); }

Enclosure from_fixed(const FixedBounds& f, mp_bitcnt_t w, int bits) {
  const BigInt scale = pow2(w);
  return Enclosure(BigRational(f.lo, scale), BigRational(f.hi, scale), bits);
}

// atanh(a/b) for 0 <= a/b <= 1/3 from the odd power series; the tail after
// the last term is bounded by P/(d*(1 - z^2)) with P the next power.
FixedBounds atanh_fixed(const BigInt& a, const BigInt& b, mp_bitcnt_t w) {
  FixedBounds sum{BigInt(0), BigInt(0)};
  if (a == 0) return sum;
  const BigInt a2 = a * a;
  const BigInt b2 = b * b;
  const BigInt gap = b2 - a2;
  const BigInt scaled_a = shifted(a, w);
  BigInt power_lo = fdiv(scaled_a, b);
  BigInt power_hi = cdiv(scaled_a, b);
  for (unsigned long d = 1;; d += 2) {
    sum.lo += fdiv(power_lo, BigInt(d));
    sum.hi += cdiv(power_hi, BigInt(d));
    power_lo = fdiv(power_lo * a2, b2);
    power_hi = cdiv(power_hi * a2, b2);
    const BigInt tail = cdiv(power_hi * b2, BigInt(d + 2) * gap);
    if (tail <= 1) {
      sum.hi += tail;
      return sum;
    }
  }
}

// e^(a/b) for 0 <= a/b <= 1/8. Once a term drops below one unit the
// remainder is at most that term again, since the ratio of successive terms
// is below 1/8.
FixedBounds exp_taylor_fixed(const BigInt& a, const BigInt& b, mp_bitcnt_t w) {
  FixedBounds term{pow2(w), pow2(w)};
  FixedBounds sum = term;
  if (a == 0) return sum;
  for (unsigned long k = 1;; ++k) {
    const BigInt den = b * k;
    term.lo = fdiv(term.lo * a, den);
    term.hi = cdiv(term.hi * a, den);
    sum.lo += term.lo;
    sum.hi += term.hi;
    if (term.hi <= 1) {
      sum.hi += term.hi;
      return sum;
    }
  }
}

// Relative outward rounding: grid 2^(e - bits - 2) where 2^e <= |value|.
Enclosure round_relative(const Enclosure& e, int bits) {
  const BigRational& anchor = e.lo().sign() > 0 ? e.lo() : e.hi();
  const long exponent = static_cast<long>(bit_length(anchor.numerator())) -
                        static_cast<long>(bit_length(anchor.denominator()));
  return e.rounded_outward(static_cast<int>(bits + 2 - (exponent - 1)));
}

Enclosure exp_positive(const BigRational& x, int bits) {
  const mp_bitcnt_t halvings = bit_length(x.ceil()) + 3;
  const mp_bitcnt_t w = static_cast<mp_bitcnt_t>(bits + guard_bits(bits)) + halvings;
  FixedBounds f = exp_taylor_fixed(x.numerator(), shifted(x.denominator(), halvings), w);
  for (mp_bitcnt_t i = 0; i < halvings; ++i) {
    BigInt lo_sq = f.lo * f.lo;
    BigInt hi_sq = f.hi * f.hi;
    mpz_fdiv_q_2exp(f.lo.get_mpz_t(), lo_sq.get_mpz_t(), w);
    mpz_cdiv_q_2exp(f.hi.get_mpz_t(), hi_sq.get_mpz_t(), w);
  }
  return from_fixed(f, w, bits);
}

}  // namespace

Enclosure ln_enclosure(const BigRational& x, int precision_bits) {
  check_precision(precision_bits);
  if (x.sign() <= 0) throw DomainError("ln of non-positive value " + x.str());

  // Reduce x = 2^k * y with y in [2/3, 4/3], so z = (y-1)/(y+1) has |z| <= 1/5.
  long k = static_cast<long>(bit_length(x.numerator())) - static_cast<long>(bit_length(x.denominator()));
  BigRational y = k >= 0 ? x / BigRational(pow2(static_cast<mp_bitcnt_t>(k)))
                         : x * BigRational(pow2(static_cast<mp_bitcnt_t>(-k)));
  if (y > BigRational(4) / BigRational(3)) {
    ++k;
    y /= BigRational(2);
  } else if (y < BigRational(2) / BigRational(3)) {
    --k;
    y *= BigRational(2);
  }
  const BigRational z = (y - BigRational(1)) / (y + BigRational(1));

  const mp_bitcnt_t w = static_cast<mp_bitcnt_t>(precision_bits + guard_bits(precision_bits)) +
                        bit_length(BigInt(k < 0 ? -k : k));
  FixedBounds zf = atanh_fixed(abs(z.numerator()), z.denominator(), w);
  if (z.sign() < 0) zf = FixedBounds{-zf.hi, -zf.lo};

  FixedBounds total = zf;
  if (k != 0) {
    const FixedBounds ln2_half = atanh_fixed(BigInt(1), BigInt(3), w);
    if (k > 0) {
      total.lo += ln2_half.lo * k;
      total.hi += ln2_half.hi * k;
    } else {
      total.lo += ln2_half.hi * k;
      total.hi += ln2_half.lo * k;
    }
  }
  total.lo *= 2;
  total.hi *= 2;
  return from_fixed(total, w, precision_bits).rounded_outward(precision_bits + 2);
}

Enclosure exp_enclosure(const BigRational& x, int precision_bits) {
  check_precision(precision_bits);
  if (x.is_zero()) return Enclosure(BigRational(1), BigRational(1), precision_bits);
  if (x.sign() > 0) return round_relative(exp_positive(x, precision_bits), precision_bits);
  const Enclosure inv = exp_positive(-x, precision_bits + 4);
  const Enclosure e(inv.hi().reciprocal(), inv.lo().reciprocal(), precision_bits);
  return round_relative(e, precision_bits);
}

Enclosure sqrt_enclosure(const BigRational& x, int precision_bits) {
  check_precision(precision_bits);
  if (x.sign() < 0) throw DomainError("sqrt of negative value " + x.str());
  const BigInt num = x.numerator();
  const BigInt den = x.denominator();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    const BigRational root(sqrt(num), sqrt(den));
    return Enclosure(root, root, precision_bits);
  }
  // sqrt(a/b) = sqrt(a*b)/b; take the integer square root at 2^w scale.
  const mp_bitcnt_t w = static_cast<mp_bitcnt_t>(precision_bits + 2);
  const BigInt radicand = shifted(num * den, 2 * w);
  const BigInt s = sqrt(radicand);
  const BigInt scale = shifted(den, w);
  return Enclosure(BigRational(s, scale), BigRational(BigInt(s + 1), scale), precision_bits);
}

Enclosure ln_enclosure(const Enclosure& x, int precision_bits) {
  if (x.is_exact()) return ln_enclosure(x.lo(), precision_bits);
  return Enclosure(ln_enclosure(x.lo(), precision_bits).lo(), ln_enclosure(x.hi(), precision_bits).hi(),
                   precision_bits);
}

Enclosure exp_enclosure(const Enclosure& x, int precision_bits) {
  if (x.is_exact()) return exp_enclosure(x.lo(), precision_bits);
  return Enclosure(exp_enclosure(x.lo(), precision_bits).lo(), exp_enclosure(x.hi(), precision_bits).hi(),
                   precision_bits);
}

Enclosure sqrt_enclosure(const Enclosure& x, int precision_bits) {
  if (x.is_exact()) return sqrt_enclosure(x.lo(), precision_bits);
  if (x.lo().sign() < 0) throw DomainError("sqrt of an enclosure reaching below zero");
  return Enclosure(sqrt_enclosure(x.lo(), precision_bits).lo(), sqrt_enclosure(x.hi(), precision_bits).hi(),
                   precision_bits);
}

Enclosure c_enclosure(int precision_bits) {
  check_precision(precision_bits);
  static std::mutex mutex;
  static std::map<int, Enclosure> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(precision_bits); it != cache.end()) return it->second;
  }
  Enclosure c = ln_enclosure(BigRational(4, 3), precision_bits);
  std::lock_guard lock(mutex);
  return cache.emplace(precision_bits, std::move(c)).first->second;
}

Enclosure b_enclosure(int precision_bits) {
  const Enclosure c = c_enclosure(precision_bits);
  const Enclosure quarter(BigRational(1, 4));
  const Enclosure q = quarter / c;
  return Enclosure(q.lo(), q.hi(), precision_bits).rounded_outward(precision_bits - 1);
}

}  // namespace binexceed::numeric
