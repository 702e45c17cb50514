#include <doctest.h>

#include "../support/properties.hpp"
#include "binexceed/bounds/bounds.hpp"
#include "binexceed/proof/appendix.hpp"

using namespace binexceed;
using numeric::BigInt;
using numeric::BigRational;

TEST_CASE("pmf sums to one") {
  const props::Result r = props::normalization(1);
  CHECK(r.instances >= props::kInstances);
  CHECK(r.failures == 0);
}

TEST_CASE("survival and cdf are complementary") {
  const props::Result r = props::complement(2);
  CHECK(r.instances >= props::kInstances);
  CHECK(r.failures == 0);
}

TEST_CASE("pmf is symmetric under p <-> 1 - p") {
  const props::Result r = props::symmetry(3);
  CHECK(r.instances >= props::kInstances);
  CHECK(r.failures == 0);
}

TEST_CASE("survival is strictly increasing in p") {
  const props::Result r = props::strict_monotonicity(4);
  CHECK(r.instances >= props::kInstances);
  CHECK(r.failures == 0);
}

TEST_CASE("tail at p = c1/n is strictly increasing in c1") {
  props::Sampler s(5);
  for (int i = 0; i < 500; ++i) {
    const std::int64_t n = s.n();
    const auto [a, b] = s.open_pair();
    // c1 in (0, 1) keeps floor(n p) = 0 so both tails are 1 - (1 - c1/n)^n.
    const BigRational t1 = binom::tail_gt_mean(binom::BinomialSpec(n, a / BigRational(n))).tail;
    const BigRational t2 = binom::tail_gt_mean(binom::BinomialSpec(n, b / BigRational(n))).tail;
    CHECK(t1 < t2);
  }
}

TEST_CASE("some appendix case applies to 10^4 random cells under the hypothesis") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::int64_t> nd(1, 500);
  std::uniform_int_distribution<long> dd(2, 5000);
  long covered = 0;
  long attempts = 0;
  while (covered < 10000) {
    ++attempts;
    const std::int64_t n = nd(rng);
    const long d = dd(rng);
    const BigRational p(BigInt(std::uniform_int_distribution<long>(1, d - 1)(rng)), BigInt(d));
    const binom::BinomialSpec spec(n, p);
    if (!bounds::theorem_hypothesis(spec).value) continue;
    const proof::AppendixCase c = proof::classify_case(spec);
    REQUIRE(c.case_id >= 1);
    REQUIRE(c.case_id <= 5);
    ++covered;
  }
  CHECK(covered == 10000);
  CHECK(attempts >= covered);
}
