#include "binexceed/binom/exact_binom.hpp"

#include <string>

#include "binexceed/errors.hpp"

namespace binexceed::binom {

namespace {

BigInt to_big(std::int64_t v) { return BigInt(std::to_string(v), 10); }

BigInt ipow(const BigInt& base, std::int64_t e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

// Integer numerators of the pmf over the common denominator d^n, where
// p = a/d and q = b/d: T_j = C(n,j) a^j b^(n-j). Successive terms are related
// by exact divisions, T_{j+1} = T_j (n-j) a / ((j+1) b).
struct Numerators {
  BigInt a;
  BigInt b;
  BigInt d;
};

Numerators numerators(const BinomialSpec& spec) {
  const BigInt a = spec.p().numerator();
  const BigInt d = spec.p().denominator();
  return {a, BigInt(d - a), d};
}

// Sum of T_j for j in [lo, hi]; requires a > 0 and b > 0.
BigInt term_sum_upward(const Numerators& s, std::int64_t n, std::int64_t lo, std::int64_t hi) {
  BigInt term = ipow(s.b, n);
  BigInt sum = 0;
  for (std::int64_t j = 0; j <= hi; ++j) {
    if (j >= lo) sum += term;
    if (j == hi) break;
    term *= s.a;
    term *= to_big(n - j);
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), s.b.get_mpz_t());
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(j + 1));
  }
  return sum;
}

BigInt term_sum_downward(const Numerators& s, std::int64_t n, std::int64_t lo) {
  BigInt term = ipow(s.a, n);
  BigInt sum = 0;
  for (std::int64_t j = n; j >= lo; --j) {
    sum += term;
    if (j == lo) break;
    term *= s.b;
    term *= to_big(j);
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), s.a.get_mpz_t());
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(n - j + 1));
  }
  return sum;
}

}  // namespace

BinomialSpec::BinomialSpec(std::int64_t n, BigRational p) : n_(n), p_(std::move(p)) {
  if (n_ < 1) throw DomainError("binomial n must be >= 1, got " + std::to_string(n_));
  if (p_.sign() < 0 || p_ > BigRational(1)) throw DomainError("binomial p must lie in [0, 1], got " + p_.str());
}

BigInt binomial_coefficient(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BigRational pmf(const BinomialSpec& spec, std::int64_t k) {
  const std::int64_t n = spec.n();
  if (k < 0 || k > n) throw DomainError("pmf index " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
  const Numerators s = numerators(spec);
  const BigInt num = binomial_coefficient(n, k) * ipow(s.a, k) * ipow(s.b, n - k);
  return BigRational(num, ipow(s.d, n));
}

BigRational survival(const BinomialSpec& spec, std::int64_t k) {
  const std::int64_t n = spec.n();
  if (k < 0 || k > n + 1) {
    throw DomainError("survival index " + std::to_string(k) + " outside [0, " + std::to_string(n + 1) + "]");
  }
  if (k == 0) return BigRational(1);
  if (k == n + 1) return BigRational(0);
  const Numerators s = numerators(spec);
  if (s.a == 0) return BigRational(0);
  if (s.b == 0) return BigRational(1);

  const BigInt total = ipow(s.d, n);
  // Sum whichever side has fewer terms.
  if (n - k + 1 <= k) return BigRational(term_sum_downward(s, n, k), total);
  return BigRational(BigInt(total - term_sum_upward(s, n, 0, k - 1)), total);
}

BigRational cdf(const BinomialSpec& spec, std::int64_t k) {
  if (k < -1 || k > spec.n()) {
    throw DomainError("cdf index " + std::to_string(k) + " outside [-1, " + std::to_string(spec.n()) + "]");
  }
  return BigRational(1) - survival(spec, k + 1);
}

std::int64_t floor_mean(const BinomialSpec& spec) {
  BigInt q;
  const BigInt num = spec.p().numerator() * to_big(spec.n());
  const BigInt den = spec.p().denominator();
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return static_cast<std::int64_t>(q.get_si());
}

ExceedanceRecord tail_gt_mean(const BinomialSpec& spec) {
  const std::int64_t m = floor_mean(spec) + 1;
  // For p = 1, m = n + 1 and the tail is P(X > n) = 0.
  return ExceedanceRecord{spec, spec.mean(), m, survival(spec, m)};
}

numeric::Verdict stochastic_dominance_check(std::int64_t n, const BigRational& p1, const BigRational& p2,
                                            std::int64_t k) {
  if (p2 < p1) throw PreconditionError("stochastic_dominance_check requires p1 <= p2");
  if (k < 0 || k > n) throw DomainError("dominance index outside [0, n]");
  const BigRational s1 = survival(BinomialSpec(n, p1), k);
  const BigRational s2 = survival(BinomialSpec(n, p2), k);
  numeric::Verdict v;
  v.value = s1 <= s2;
  v.witness = numeric::Enclosure(s1 - s2);
  return v;
}

}  // namespace binexceed::binom
