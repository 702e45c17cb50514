#include <doctest.h>

#include "binexceed/binom/exact_binom.hpp"
#include "binexceed/errors.hpp"

using namespace binexceed;
using namespace binexceed::binom;

namespace {

BigRational R(const char* s) { return BigRational::parse(s); }

// P(X > np) by summing the pmf over every outcome k with k > np.
BigRational brute_force_tail(const BinomialSpec& spec) {
  BigRational total(0);
  for (std::int64_t k = 0; k <= spec.n(); ++k) {
    if (BigRational(k) > spec.mean()) {
      total += BigRational(binomial_coefficient(spec.n(), k)) * spec.p().pow(k) * spec.q().pow(spec.n() - k);
    }
  }
  return total;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(BinomialSpec(0, R("1/2")), DomainError);
  CHECK_THROWS_AS(BinomialSpec(3, R("-1/2")), DomainError);
  CHECK_THROWS_AS(BinomialSpec(3, R("3/2")), DomainError);
  const BinomialSpec s(5, R("2/7"));
  CHECK(s.q() == R("5/7"));
  CHECK(s.mean() == R("10/7"));
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial_coefficient(10, 3) == 120);
  CHECK(binomial_coefficient(200, 100) == BigInt("90548514656103281165404177077484163874504589675413336841320"));
  CHECK(binomial_coefficient(7, 0) == 1);
  CHECK(binomial_coefficient(7, 7) == 1);
}

TEST_CASE("pmf") {
  CHECK(pmf(BinomialSpec(2, R("1/2")), 1) == R("1/2"));
  CHECK(pmf(BinomialSpec(1, R("3/10")), 1) == R("3/10"));
  CHECK(pmf(BinomialSpec(5, R("1/5")), 0) == R("1024/3125"));
  CHECK(pmf(BinomialSpec(4, R("0")), 0) == BigRational(1));
  CHECK(pmf(BinomialSpec(4, R("1")), 4) == BigRational(1));
  CHECK_THROWS_AS(pmf(BinomialSpec(4, R("1/2")), 5), DomainError);
  CHECK_THROWS_AS(pmf(BinomialSpec(4, R("1/2")), -1), DomainError);
}

TEST_CASE("survival") {
  CHECK(survival(BinomialSpec(2, R("1/2")), 2) == R("1/4"));
  CHECK(survival(BinomialSpec(7, R("2/9")), 0) == BigRational(1));
  CHECK(survival(BinomialSpec(7, R("2/9")), 8) == BigRational(0));
  CHECK(survival(BinomialSpec(3, R("1/3")), 2) == R("7/27"));
  CHECK(survival(BinomialSpec(5, R("1/5")), 2) == R("821/3125"));
  CHECK(survival(BinomialSpec(5, R("0")), 1) == BigRational(0));
  CHECK(survival(BinomialSpec(5, R("1")), 5) == BigRational(1));
  CHECK_THROWS_AS(survival(BinomialSpec(4, R("1/2")), 6), DomainError);
  CHECK_THROWS_AS(survival(BinomialSpec(4, R("1/2")), -1), DomainError);
  CHECK(cdf(BinomialSpec(4, R("1/2")), -1) == BigRational(0));
  CHECK(cdf(BinomialSpec(4, R("1/2")), 4) == BigRational(1));
}

TEST_CASE("tail_gt_mean") {
  const ExceedanceRecord eq = tail_gt_mean(BinomialSpec(2, R("1/2")));
  CHECK(eq.tail == R("1/4"));
  CHECK(eq.m == 2);
  CHECK(eq.mean == BigRational(1));
  CHECK(tail_gt_mean(BinomialSpec(5, R("0"))).tail == BigRational(0));
  CHECK(tail_gt_mean(BinomialSpec(5, R("1"))).tail == BigRational(0));
  CHECK(tail_gt_mean(BinomialSpec(5, R("1/5"))).tail == R("821/3125"));
  const ExceedanceRecord r = tail_gt_mean(BinomialSpec(5, R("9/10")));
  CHECK(r.m == 5);
  CHECK(r.tail == R("59049/100000"));
  CHECK(floor_mean(BinomialSpec(7, R("3/7"))) == 3);
  CHECK(floor_mean(BinomialSpec(7, R("2/5"))) == 2);
}

TEST_CASE("tail_gt_mean matches brute-force enumeration for n <= 30") {
  for (std::int64_t n = 1; n <= 30; ++n) {
    for (std::int64_t k = 0; k <= 40; ++k) {
      const BinomialSpec spec(n, BigRational(BigInt(k), BigInt(40)));
      CAPTURE(n);
      CAPTURE(k);
      CHECK(tail_gt_mean(spec).tail == brute_force_tail(spec));
    }
  }
}

TEST_CASE("large n stays exact") {
  const BinomialSpec spec(1000, R("1/3"));
  const BigRational tail = tail_gt_mean(spec).tail;
  CHECK(tail > R("0.48"));
  CHECK(tail < R("0.5"));
  CHECK(survival(spec, 334) + cdf(spec, 333) == BigRational(1));
}

TEST_CASE("stochastic dominance check") {
  CHECK(stochastic_dominance_check(5, R("1/4"), R("1/2"), 3).value);
  const numeric::Verdict same = stochastic_dominance_check(5, R("1/3"), R("1/3"), 2);
  CHECK(same.value);
  CHECK(same.witness->lo().is_zero());
  CHECK_THROWS_AS(stochastic_dominance_check(5, R("1/2"), R("1/4"), 3), PreconditionError);
  for (std::int64_t k = 0; k <= 10; ++k) {
    CHECK(stochastic_dominance_check(10, R("3/17"), R("11/17"), k).value);
  }
}
