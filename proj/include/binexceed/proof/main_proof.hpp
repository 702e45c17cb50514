#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "binexceed/binom/exact_binom.hpp"
#include "binexceed/numeric/certified.hpp"
#include "binexceed/proof/report.hpp"

namespace binexceed::proof {

using binom::BinomialSpec;

/// One node of the monotone chain for a fixed threshold m:
/// p_j = (m-1)/j and value = P(X_{j, p_j} >= m).
struct ChainStep {
  std::int64_t j;
  BigRational p_j;
  BigRational value;
};

/// Chain nodes j = m..j_max (requires 2 <= m <= j_max).
std::vector<ChainStep> threshold_chain(std::int64_t m, std::int64_t j_max);

/// Checks the monotone-chain proof of P(X > EX) >= 1/4 for one (n, p):
/// the small-mean argument when np < 1, otherwise the reduction to
/// p_n = (m-1)/n, the strictly increasing chain j = m..n and its terminal
/// value (1 - 1/m)^m. Throws PreconditionError unless 1 > p >= c/n.
ProofReport verify_main_proof(const BinomialSpec& spec, int max_precision_bits = numeric::kMaxPrecisionBits);

/// The same argument over every n <= n_max and p = k/grid inside the
/// hypothesis, with one chain per threshold m shared across cells.
ProofReport verify_main_sweep(std::int64_t n_max, std::int64_t grid,
                              int max_precision_bits = numeric::kMaxPrecisionBits);

/// g(p) = (1 - (1-p)^n)/(n p) is non-increasing on p = k/grid_size, and
/// g at c/n (through the enclosure endpoints of c) dominates b.
ProofReport verify_proposition_proof(std::int64_t n, std::int64_t grid_size,
                                     int precision_bits = numeric::kDefaultPrecisionBits);

/// verify_proposition_proof for n = 1..n_max plus the exact/enclosure sweep
/// of the small-p bound over p = k/(grid n).
ProofReport verify_proposition_sweep(std::int64_t n_max, std::int64_t grid,
                                     int max_precision_bits = numeric::kMaxPrecisionBits);

/// Strict increase of P(X_{j, (m-1)/j} >= m) in j, for every m in [2, m_max]
/// and j in [m, n_max - 1].
ProofReport anderson_samuels_sweep(std::int64_t m_max, std::int64_t n_max);

/// Small-mean argument (c <= np < 1) for one cell: tail = 1 - q^n,
/// q^n <= q^(c/p), q^(c/p) < 3/4 and tail > 1/4. Appends its steps to
/// `report` with the given id prefix and returns whether all held.
bool check_small_mean(const BinomialSpec& spec, int max_precision_bits, ProofReport& report,
                      const std::string& prefix);

/// Adds a step decided by compare_certified(a, rel, b, max_bits): TRUE/FALSE
/// with the difference enclosure as witness, or UNDECIDED at the cap.
bool add_certified_step(ProofReport& report, std::string id, std::string anchor, const numeric::CertifiedReal& a,
                        numeric::Relation rel, const numeric::CertifiedReal& b, int max_bits,
                        std::vector<Witness> witnesses = {});

}  // namespace binexceed::proof
