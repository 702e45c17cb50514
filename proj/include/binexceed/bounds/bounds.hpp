#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "binexceed/binom/exact_binom.hpp"
#include "binexceed/numeric/certified.hpp"

namespace binexceed::bounds {

using binom::BinomialSpec;
using numeric::BigRational;
using numeric::Enclosure;
using numeric::Verdict;

/// Verdicts of the 1/4 lower bound for one (n, p).
struct TheoremVerdict {
  Verdict hypothesis_holds;  // 1 > p >= c/n
  Verdict bound_holds;       // P(X > EX) >= 1/4
  Verdict strict;            // P(X > EX) > 1/4
  bool is_equality_case = false;  // n = 2 and p = 1/2
  BigRational tail;
};

/// Certificate that a constant c1 < c is too small: either a finite n with
/// P(X_{n, c1/n} > c1) < 1/4, or only the limiting value 1 - e^-c1 < 1/4.
struct OptimalityWitness {
  BigRational c1;
  std::optional<std::int64_t> n;
  std::optional<BigRational> p;
  std::optional<BigRational> tail;
  Enclosure limit_enclosure;
};

/// Certified `1 > p >= c/n`.
Verdict theorem_hypothesis(const BinomialSpec& spec, int max_precision_bits = numeric::kMaxPrecisionBits);

/// Certified `p <= c/n`, the regime of the small-p bound.
Verdict proposition_hypothesis(const BinomialSpec& spec, int max_precision_bits = numeric::kMaxPrecisionBits);

/// Throws UndecidedError if n*p cannot be separated from c at the cap.
TheoremVerdict check_theorem(const BinomialSpec& spec, int max_precision_bits = numeric::kMaxPrecisionBits);

/// TRUE iff 1 - (1-p)^n >= max(1, b n) p. Throws PreconditionError unless
/// p <= c/n is certified. The active branch of the max is recorded in detail.
Verdict check_proposition(const BinomialSpec& spec, int max_precision_bits = numeric::kMaxPrecisionBits);

/// Smallest n <= n_max with P(X_{n, c1/n} > c1) < 1/4, plus the limit
/// certificate. Throws PreconditionError unless 0 < c1 < c is certified.
OptimalityWitness optimality_search(const BigRational& c1, std::int64_t n_max,
                                    int max_precision_bits = numeric::kMaxPrecisionBits);

struct SweepFailure {
  std::int64_t n;
  BigRational p;
  BigRational tail;
};

struct SweepSummary {
  std::int64_t cells = 0;       // (n, p) points inside the hypothesis
  std::int64_t equality_cells = 0;
  std::vector<SweepFailure> failures;
  std::vector<BinomialSpec> equalities;
  std::optional<BigRational> min_tail;

  bool passed() const { return failures.empty(); }
};

/// All n in [n_lo, n_hi] and p = k/grid (k = 1..grid-1) with certified
/// p >= c/n: tail >= 1/4, strict except at (2, 1/2). A cell at (2, 1/2) is
/// recorded in `equalities`; any other tail <= 1/4 is a failure.
SweepSummary theorem_sweep(std::int64_t n_lo, std::int64_t n_hi, std::int64_t grid,
                           int max_precision_bits = numeric::kMaxPrecisionBits);

/// All n in [n_lo, n_hi] and p = k/(grid n) (k = 0, 1, ...) with certified
/// p <= c/n: the small-p bound holds.
SweepSummary proposition_sweep(std::int64_t n_lo, std::int64_t n_hi, std::int64_t grid,
                               int max_precision_bits = 256);

}  // namespace binexceed::bounds
