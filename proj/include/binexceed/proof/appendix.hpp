#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "binexceed/binom/exact_binom.hpp"
#include "binexceed/numeric/certified.hpp"
#include "binexceed/proof/report.hpp"

namespace binexceed::proof {

using binom::BinomialSpec;

/// Berry-Esseen constants: eps(n, p) = c3 / sqrt(n) * (rho / sigma^3 + c2).
inline const BigRational kBerryEsseenC3{33477, 100000};
inline const BigRational kBerryEsseenC2{429, 1000};
/// 1/2 - 0.25587: every eps_*(n), n >= 4, must stay below this.
inline const BigRational kEpsilonThreshold{24413, 100000};

struct BerryEsseenEval {
  std::int64_t n;
  BigRational p;
  BigRational sigma_sq;  // p q
  BigRational rho;       // p q (p^2 + q^2)
  Enclosure ratio;       // rho / sigma^3
  Enclosure epsilon;
};

/// Throws DomainError for p in {0, 1} and PreconditionError for n < 1.
BerryEsseenEval berry_esseen_epsilon(std::int64_t n, const BigRational& p,
                                     int precision_bits = numeric::kDefaultPrecisionBits);

/// eps(n, p) as a refinable real.
numeric::CertifiedReal epsilon_certified(std::int64_t n, const BigRational& p);
/// eps_*(n) = eps(n, 2/n), n >= 3.
numeric::CertifiedReal epsilon_star(std::int64_t n);
/// c3 (1/sqrt(2 (1 - 2/n)) + c2/sqrt(n)): decreasing in n and >= eps_*(n), n >= 3.
numeric::CertifiedReal epsilon_star_dominating(std::int64_t n);

/// f3(n) = 1 - (2 - 1/n)(1 - 1/n)^(n-1).
BigRational f3(std::int64_t n);
/// f1(p, n) = p^n + n p^(n-1) (1 - p).
BigRational f1(const BigRational& p, std::int64_t n);
/// f1(1 - 2/n, n) = (3n - 2)/(n - 2) (1 - 2/n)^n, n >= 3.
BigRational f1_tilde(std::int64_t n);
/// ln(f1_tilde)' = ln(1 - 2/n) + (6n - 8)/((n - 2)(3n - 2)), n >= 3.
numeric::CertifiedReal f1_tilde_log_derivative(std::int64_t n);

struct AppendixCase {
  int case_id = 0;  // 0 when no case applies
  std::string condition;
  numeric::Verdict verdict;  // does P(X > EX) >= 1/4 hold for this spec
  std::vector<Witness> witness;
};

/// Condition text of case 1..5.
std::string case_condition(int case_id);
/// Which of the five cases apply (exact tests on np and nq, plus np >= c for case 2).
std::vector<int> applicable_cases(const BinomialSpec& spec, int max_precision_bits = numeric::kMaxPrecisionBits);
bool cases_cover(const BinomialSpec& spec, int max_precision_bits = numeric::kMaxPrecisionBits);
/// Lowest applicable case. Throws PreconditionError unless 1 > p >= c/n.
AppendixCase classify_case(const BinomialSpec& spec, int max_precision_bits = numeric::kMaxPrecisionBits);

/// Case 1: convexity in p, monotonicity pattern of eps_* on integers,
/// eps_* < 0.24413 on [4, n_scan_max] and the dominating bound beyond.
/// precision_bits sets the precision of the reported enclosures.
ProofReport verify_case1(std::int64_t n_scan_max = 600, std::int64_t n_tail_start = 90,
                         int precision_bits = 200);
/// Case 2 (c <= np < 1) on p = k/grid, n <= n_max.
ProofReport verify_case2(std::int64_t n_max, std::int64_t grid = 1000,
                         int max_precision_bits = numeric::kMaxPrecisionBits);
ProofReport verify_case3(std::int64_t n_max);
ProofReport verify_case4(std::int64_t n_max);
ProofReport verify_case5(std::int64_t n_max);

/// All five cases with the integer scans up to n_max, plus case coverage
/// and agreement with the main proof on p = k/grid for n <= min(n_max, 200).
ProofReport verify_appendix(std::int64_t n_max = 600, std::int64_t grid = 1000,
                            int max_precision_bits = numeric::kMaxPrecisionBits);

}  // namespace binexceed::proof
