#pragma once

#include <cstdint>

#include "binexceed/numeric/certified.hpp"
#include "binexceed/numeric/rational.hpp"

namespace binexceed::binom {

using numeric::BigInt;
using numeric::BigRational;

/// Parameters (n, p) of a binomial law: n >= 1 trials, 0 <= p <= 1.
class BinomialSpec {
 public:
  /// Throws DomainError when n < 1 or p lies outside [0, 1].
  BinomialSpec(std::int64_t n, BigRational p);

  std::int64_t n() const { return n_; }
  const BigRational& p() const { return p_; }
  BigRational q() const { return BigRational(1) - p_; }
  BigRational mean() const { return BigRational(n_) * p_; }

  friend bool operator==(const BinomialSpec&, const BinomialSpec&) = default;

 private:
  std::int64_t n_;
  BigRational p_;
};

/// P(X > EX) together with the threshold m = floor(np) + 1 it reduces to.
struct ExceedanceRecord {
  BinomialSpec spec;
  BigRational mean;
  std::int64_t m;
  BigRational tail;
};

BigInt binomial_coefficient(std::int64_t n, std::int64_t k);

/// C(n,k) p^k (1-p)^(n-k). DomainError unless 0 <= k <= n.
BigRational pmf(const BinomialSpec& spec, std::int64_t k);

/// P(X >= k) for 0 <= k <= n + 1.
BigRational survival(const BinomialSpec& spec, std::int64_t k);

/// P(X <= k) for -1 <= k <= n.
BigRational cdf(const BinomialSpec& spec, std::int64_t k);

/// floor(np) by exact integer division.
std::int64_t floor_mean(const BinomialSpec& spec);

ExceedanceRecord tail_gt_mean(const BinomialSpec& spec);

/// TRUE iff P(X_{n,p1} >= k) <= P(X_{n,p2} >= k). Requires p1 <= p2.
numeric::Verdict stochastic_dominance_check(std::int64_t n, const BigRational& p1, const BigRational& p2,
                                            std::int64_t k);

}  // namespace binexceed::binom
