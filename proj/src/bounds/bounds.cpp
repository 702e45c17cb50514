#include "binexceed/bounds/bounds.hpp"

#include <algorithm>
#include <string>

#include "binexceed/errors.hpp"
#include "binexceed/parallel.hpp"

namespace binexceed::bounds {

using numeric::BigInt;
using numeric::CertifiedReal;
using numeric::Relation;

namespace {

const BigRational& quarter() {
  static const BigRational q(1, 4);
  return q;
}

Verdict exact_verdict(bool value, const BigRational& difference) {
  Verdict v;
  v.value = value;
  v.witness = Enclosure(difference);
  return v;
}

}  // namespace

Verdict theorem_hypothesis(const BinomialSpec& spec, int max_precision_bits) {
  if (spec.p() >= BigRational(1)) {
    Verdict v = exact_verdict(false, spec.p() - BigRational(1));
    v.detail = "p = 1 violates 1 > p";
    return v;
  }
  Verdict v = numeric::compare_certified(spec.mean(), Relation::GreaterEqual, CertifiedReal::c(),
                                         max_precision_bits);
  v.detail = "n p >= c";
  return v;
}

Verdict proposition_hypothesis(const BinomialSpec& spec, int max_precision_bits) {
  Verdict v = numeric::compare_certified(spec.mean(), Relation::LessEqual, CertifiedReal::c(),
                                         max_precision_bits);
  v.detail = "n p <= c";
  return v;
}

TheoremVerdict check_theorem(const BinomialSpec& spec, int max_precision_bits) {
  TheoremVerdict out;
  out.hypothesis_holds = theorem_hypothesis(spec, max_precision_bits);
  out.tail = binom::tail_gt_mean(spec).tail;
  const BigRational gap = out.tail - quarter();
  out.bound_holds = exact_verdict(gap.sign() >= 0, gap);
  out.strict = exact_verdict(gap.sign() > 0, gap);
  out.is_equality_case = spec.n() == 2 && spec.p() == BigRational(1, 2);
  return out;
}

Verdict check_proposition(const BinomialSpec& spec, int max_precision_bits) {
  if (!proposition_hypothesis(spec, max_precision_bits).value) {
    throw PreconditionError("proposition requires p <= c/n; got n = " + std::to_string(spec.n()) +
                            ", p = " + spec.p().str());
  }
  const BigRational tail = BigRational(1) - spec.q().pow(spec.n());

  const CertifiedReal bn = CertifiedReal::b() * CertifiedReal(BigRational(spec.n()));
  const bool bn_active = numeric::compare_certified(bn, Relation::Greater, BigRational(1), max_precision_bits).value;

  const CertifiedReal rhs = bn_active ? bn * CertifiedReal(spec.p()) : CertifiedReal(spec.p());
  Verdict v = numeric::compare_certified(tail, Relation::GreaterEqual, rhs, max_precision_bits);
  v.detail = bn_active ? "max(1, b n) = b n" : "max(1, b n) = 1";
  return v;
}

OptimalityWitness optimality_search(const BigRational& c1, std::int64_t n_max, int max_precision_bits) {
  if (c1.sign() <= 0) throw PreconditionError("optimality_search requires c1 > 0");
  if (n_max < 1) throw PreconditionError("optimality_search requires n_max >= 1");
  if (!numeric::compare_certified(c1, Relation::Less, CertifiedReal::c(), max_precision_bits).value) {
    throw PreconditionError("optimality_search requires c1 < c = ln(4/3); got " + c1.str());
  }

  const CertifiedReal limit = BigRational(1) - CertifiedReal::exp(-c1);
  const numeric::Verdict below =
      numeric::compare_certified(limit, Relation::Less, quarter(), max_precision_bits);
  const Enclosure limit_enclosure = limit.at(below.precision_bits);

  OptimalityWitness w{c1, std::nullopt, std::nullopt, std::nullopt, limit_enclosure};
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const BigRational p = c1 / BigRational(n);
    const BigRational tail = binom::tail_gt_mean(BinomialSpec(n, p)).tail;
    if (tail < quarter()) {
      w.n = n;
      w.p = p;
      w.tail = tail;
      break;
    }
  }
  return w;
}

SweepSummary theorem_sweep(std::int64_t n_lo, std::int64_t n_hi, std::int64_t grid, int max_precision_bits) {
  if (n_lo < 1 || n_hi < n_lo || grid < 2) throw PreconditionError("theorem_sweep: bad range");
  const auto rows = static_cast<std::size_t>(n_hi - n_lo + 1);
  std::vector<SweepSummary> per_n(rows);

  parallel_for(rows, [&](std::size_t row) {
    const std::int64_t n = n_lo + static_cast<std::int64_t>(row);
    SweepSummary& s = per_n[row];
    for (std::int64_t k = 1; k < grid; ++k) {
      const BinomialSpec spec(n, BigRational(BigInt(k), BigInt(grid)));
      const TheoremVerdict v = check_theorem(spec, max_precision_bits);
      if (!v.hypothesis_holds.value) continue;
      ++s.cells;
      if (!s.min_tail || v.tail < *s.min_tail) s.min_tail = v.tail;
      if (v.is_equality_case) {
        ++s.equality_cells;
        s.equalities.push_back(spec);
        if (!v.bound_holds.value) s.failures.push_back({n, spec.p(), v.tail});
      } else if (!v.strict.value) {
        s.failures.push_back({n, spec.p(), v.tail});
      }
    }
  });

  SweepSummary total;
  for (SweepSummary& s : per_n) {
    total.cells += s.cells;
    total.equality_cells += s.equality_cells;
    total.failures.insert(total.failures.end(), s.failures.begin(), s.failures.end());
    total.equalities.insert(total.equalities.end(), s.equalities.begin(), s.equalities.end());
    if (s.min_tail && (!total.min_tail || *s.min_tail < *total.min_tail)) total.min_tail = s.min_tail;
  }
  return total;
}

SweepSummary proposition_sweep(std::int64_t n_lo, std::int64_t n_hi, std::int64_t grid, int max_precision_bits) {
  if (n_lo < 1 || n_hi < n_lo || grid < 1) throw PreconditionError("proposition_sweep: bad range");
  const auto rows = static_cast<std::size_t>(n_hi - n_lo + 1);
  std::vector<SweepSummary> per_n(rows);

  parallel_for(rows, [&](std::size_t row) {
    const std::int64_t n = n_lo + static_cast<std::int64_t>(row);
    SweepSummary& s = per_n[row];
    for (std::int64_t k = 0;; ++k) {
      const BinomialSpec spec(n, BigRational(BigInt(k), BigInt(grid) * n));
      if (!proposition_hypothesis(spec, max_precision_bits).value) break;
      ++s.cells;
      const BigRational tail = binom::tail_gt_mean(spec).tail;
      if (!s.min_tail || tail < *s.min_tail) s.min_tail = tail;
      if (!check_proposition(spec, max_precision_bits).value) s.failures.push_back({n, spec.p(), tail});
    }
  });

  SweepSummary total;
  for (SweepSummary& s : per_n) {
    total.cells += s.cells;
    total.failures.insert(total.failures.end(), s.failures.begin(), s.failures.end());
    if (s.min_tail && (!total.min_tail || *s.min_tail < *total.min_tail)) total.min_tail = s.min_tail;
  }
  return total;
}

}  // namespace binexceed::bounds
