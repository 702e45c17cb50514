#pragma once

// Randomized exact-arithmetic property suites over the binomial layer,
// shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <random>

#include "binexceed/binom/exact_binom.hpp"

namespace props {

using binexceed::binom::BinomialSpec;
using binexceed::numeric::BigInt;
using binexceed::numeric::BigRational;

struct Result {
  long instances = 0;
  long failures = 0;
  bool passed(long min_instances) const { return failures == 0 && instances >= min_instances; }
};

inline constexpr long kInstances = 10000;
inline constexpr std::int64_t kMaxN = 40;
inline constexpr long kMaxDen = 1000;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::int64_t n() { return std::uniform_int_distribution<std::int64_t>(1, kMaxN)(rng_); }
  std::int64_t k(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }

  // p = a/d with 0 <= a <= d.
  BigRational closed_unit() {
    const long d = std::uniform_int_distribution<long>(1, kMaxDen)(rng_);
    return BigRational(BigInt(std::uniform_int_distribution<long>(0, d)(rng_)), BigInt(d));
  }

  // 0 < p1 < p2 < 1.
  std::pair<BigRational, BigRational> open_pair() {
    for (;;) {
      const long d = std::uniform_int_distribution<long>(3, kMaxDen)(rng_);
      std::uniform_int_distribution<long> a(1, d - 1);
      const long x = a(rng_);
      const long y = a(rng_);
      if (x == y) continue;
      const BigRational p(BigInt(std::min(x, y)), BigInt(d));
      const BigRational q(BigInt(std::max(x, y)), BigInt(d));
      return {p, q};
    }
  }

 private:
  std::mt19937_64 rng_;
};

// sum_k pmf(k) = 1.
inline Result normalization(std::uint64_t seed, long count = kInstances) {
  Sampler s(seed);
  Result r;
  for (long i = 0; i < count; ++i) {
    const BinomialSpec spec(s.n(), s.closed_unit());
    BigRational total(0);
    for (std::int64_t k = 0; k <= spec.n(); ++k) total += binexceed::binom::pmf(spec, k);
    ++r.instances;
    if (total != BigRational(1)) ++r.failures;
  }
  return r;
}

// survival(k) + P(X <= k - 1) = 1.
inline Result complement(std::uint64_t seed, long count = kInstances) {
  Sampler s(seed);
  Result r;
  for (long i = 0; i < count; ++i) {
    const BinomialSpec spec(s.n(), s.closed_unit());
    const std::int64_t k = s.k(0, spec.n() + 1);
    ++r.instances;
    if (binexceed::binom::survival(spec, k) + binexceed::binom::cdf(spec, k - 1) != BigRational(1)) ++r.failures;
  }
  return r;
}

// pmf((n, p), k) = pmf((n, 1 - p), n - k).
inline Result symmetry(std::uint64_t seed, long count = kInstances) {
  Sampler s(seed);
  Result r;
  for (long i = 0; i < count; ++i) {
    const BinomialSpec spec(s.n(), s.closed_unit());
    const BinomialSpec mirror(spec.n(), spec.q());
    const std::int64_t k = s.k(0, spec.n());
    ++r.instances;
    if (binexceed::binom::pmf(spec, k) != binexceed::binom::pmf(mirror, spec.n() - k)) ++r.failures;
  }
  return r;
}

// 0 < p1 < p2 < 1 and 1 <= k <= n: P(X_{n,p1} >= k) < P(X_{n,p2} >= k).
inline Result strict_monotonicity(std::uint64_t seed, long count = kInstances) {
  Sampler s(seed);
  Result r;
  for (long i = 0; i < count; ++i) {
    const std::int64_t n = s.n();
    const auto [p1, p2] = s.open_pair();
    const std::int64_t k = s.k(1, n);
    ++r.instances;
    if (!(binexceed::binom::survival(BinomialSpec(n, p1), k) < binexceed::binom::survival(BinomialSpec(n, p2), k))) {
      ++r.failures;
    }
  }
  return r;
}

}  // namespace props
