#include "binexceed/proof/main_proof.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "binexceed/bounds/bounds.hpp"
#include "binexceed/errors.hpp"
#include "binexceed/numeric/certified.hpp"

namespace binexceed::proof {

using numeric::CertifiedReal;
using numeric::Relation;

namespace {

const BigRational kQuarter(1, 4);

std::string num(std::int64_t v) { return std::to_string(v); }

// q^(c/p) = exp((c/p) ln q), for 0 < p < 1.
CertifiedReal power_at_threshold(const BigRational& p) {
  const BigRational q = BigRational(1) - p;
  return CertifiedReal(CertifiedReal::Generator([p, q](int bits) {
    const int inner = std::min(bits + 8, numeric::kMaxPrecisionBits);
    const Enclosure exponent = numeric::c_enclosure(inner) * numeric::ln_enclosure(q, inner) / Enclosure(p);
    return numeric::exp_enclosure(exponent.rounded_outward(inner + 8), bits);
  }));
}

// Checks of the np >= 1 branch that depend on the cell, given the chain for m.
bool check_reduction(const BinomialSpec& spec, std::int64_t m, const BigRational& tail,
                     const BigRational& chain_value_at_n, ProofReport& report, const std::string& prefix) {
  const std::int64_t n = spec.n();
  const BigRational p_n(BigInt(m - 1), BigInt(n));
  const bool np_integer = spec.mean().is_integer();
  const bool ok_range = m >= 2 && m <= n;
  report.add(prefix + "threshold", "main.threshold", ok_range,
             {rational_witness("m", BigRational(m)), rational_witness("n", BigRational(n))});

  // P(X_{n,p} >= m) >= P(X_{n,p_n} >= m), strict iff np is not an integer.
  const bool ok_reduction = np_integer ? (spec.p() == p_n && tail == chain_value_at_n) : (tail > chain_value_at_n);
  report.add(prefix + "reduce-to-p_n", "main.monotone-in-p", ok_reduction,
             {rational_witness("p_n", p_n), rational_witness("P(X_{n,p} >= m)", tail),
              rational_witness("P(X_{n,p_n} >= m)", chain_value_at_n)},
             np_integer ? "np integer: equality expected" : "np not an integer: strict inequality expected");
  return ok_range && ok_reduction;
}

bool check_conclusion(const BinomialSpec& spec, const BigRational& tail, ProofReport& report,
                      const std::string& prefix) {
  const bool equality_case = spec.n() == 2 && spec.p() == BigRational(1, 2);
  const bool ok = equality_case ? tail == kQuarter : tail > kQuarter;
  report.add(prefix + "conclusion", "theorem.bound", ok, {rational_witness("P(X > EX)", tail)},
             equality_case ? "equality case n = 2, p = 1/2" : "strict");
  return ok;
}

// Chain strict increase and terminal identity for one m.
bool check_chain(const std::vector<ChainStep>& chain, std::int64_t m, ProofReport& report, const std::string& prefix,
                 bool per_step) {
  bool ok = true;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const bool inc = chain[i + 1].value > chain[i].value;
    ok = ok && inc;
    if (per_step || !inc) {
      report.add(prefix + "chain.j=" + num(chain[i].j), "main.anderson-samuels", inc,
                 {rational_witness("P(X_{j,p_j} >= m)", chain[i].value),
                  rational_witness("P(X_{j+1,p_{j+1}} >= m)", chain[i + 1].value)});
    }
  }
  if (!per_step && ok && chain.size() > 1) {
    report.add(prefix + "chain", "main.anderson-samuels", true,
               {rational_witness("first", chain.front().value), rational_witness("last", chain.back().value),
                rational_witness("steps", BigRational(static_cast<long>(chain.size() - 1)))});
  }

  const BigRational terminal = (BigRational(1) - BigRational(BigInt(1), BigInt(m))).pow(m);
  const bool ok_terminal = chain.front().value == terminal;
  report.add(prefix + "chain.terminal", "main.terminal", ok_terminal,
             {rational_witness("P(X_{m,p_m} >= m)", chain.front().value), rational_witness("(1-1/m)^m", terminal)});
  const bool ok_bound = m == 2 ? terminal == kQuarter : terminal > kQuarter;
  report.add(prefix + "chain.terminal-bound", "main.terminal", ok_bound, {rational_witness("(1-1/m)^m", terminal)},
             m == 2 ? "equality at m = 2" : "strict for m > 2");
  return ok && ok_terminal && ok_bound;
}

const char* kTerminalNote =
    "the terminal bound is checked for the event {X >= m}; for X ~ Bin(m, p) the event {X > m} is empty";

}  // namespace

bool add_certified_step(ProofReport& report, std::string id, std::string anchor, const CertifiedReal& a,
                        Relation rel, const CertifiedReal& b, int max_bits, std::vector<Witness> witnesses) {
  try {
    const numeric::Verdict v = numeric::compare_certified(a, rel, b, max_bits);
    if (v.witness) witnesses.push_back(enclosure_witness("lhs - rhs", *v.witness));
    report.add(std::move(id), std::move(anchor), v.value, std::move(witnesses));
    return v.value;
  } catch (const UndecidedError& e) {
    report.add(ProofStep{std::move(id), std::move(anchor), StepVerdict::Undecided, std::move(witnesses), e.what()});
    return false;
  }
}

std::vector<ChainStep> threshold_chain(std::int64_t m, std::int64_t j_max) {
  if (m < 2 || j_max < m) throw PreconditionError("threshold_chain requires 2 <= m <= j_max");
  std::vector<ChainStep> out;
  out.reserve(static_cast<std::size_t>(j_max - m + 1));
  for (std::int64_t j = m; j <= j_max; ++j) {
    const BigRational p_j(BigInt(m - 1), BigInt(j));
    out.push_back(ChainStep{j, p_j, binom::survival(BinomialSpec(j, p_j), m)});
  }
  return out;
}

bool check_small_mean(const BinomialSpec& spec, int max_precision_bits, ProofReport& report,
                      const std::string& prefix) {
  const std::int64_t n = spec.n();
  const BigRational& p = spec.p();
  const BigRational qn = spec.q().pow(n);
  const BigRational tail = binom::tail_gt_mean(spec).tail;

  const bool ok_identity = tail == BigRational(1) - qn;
  report.add(prefix + "small-mean.identity", "main.small-mean", ok_identity,
             {rational_witness("P(X > np)", tail), rational_witness("1 - q^n", BigRational(1) - qn)});

  const CertifiedReal threshold_power = power_at_threshold(p);
  const bool ok_power = add_certified_step(report, prefix + "small-mean.q^n<=q^(c/p)", "main.small-mean", qn,
                                      Relation::LessEqual, threshold_power, max_precision_bits);
  const bool ok_exponent = add_certified_step(report, prefix + "small-mean.q^(c/p)<3/4", "main.small-mean",
                                         threshold_power, Relation::Less, BigRational(3, 4), max_precision_bits);
  const bool ok_strict = tail > kQuarter;
  report.add(prefix + "small-mean.strict", "theorem.bound", ok_strict, {rational_witness("P(X > np)", tail)});
  return ok_identity && ok_power && ok_exponent && ok_strict;
}

ProofReport verify_main_proof(const BinomialSpec& spec, int max_precision_bits) {
  if (!bounds::theorem_hypothesis(spec, max_precision_bits).value) {
    throw PreconditionError("verify_main_proof requires 1 > p >= c/n; got n = " + num(spec.n()) +
                            ", p = " + spec.p().str());
  }
  ProofReport report("main proof, n = " + num(spec.n()) + ", p = " + spec.p().str());
  const binom::ExceedanceRecord rec = binom::tail_gt_mean(spec);

  if (spec.mean() < BigRational(1)) {
    check_small_mean(spec, max_precision_bits, report, "");
  } else {
    const std::vector<ChainStep> chain = threshold_chain(rec.m, spec.n());
    check_reduction(spec, rec.m, rec.tail, chain.back().value, report, "");
    check_chain(chain, rec.m, report, "", true);
    report.add_note(kTerminalNote);
  }
  check_conclusion(spec, rec.tail, report, "");
  return report;
}

ProofReport verify_main_sweep(std::int64_t n_max, std::int64_t grid, int max_precision_bits) {
  if (n_max < 1 || grid < 2) throw PreconditionError("verify_main_sweep requires n_max >= 1 and grid >= 2");
  ProofReport report("main proof sweep, n <= " + num(n_max) + ", p = k/" + num(grid));

  // Chains for every threshold that can occur: m = floor(np) + 1 in [2, n].
  std::map<std::int64_t, std::vector<ChainStep>> chains;
  for (std::int64_t m = 2; m <= n_max; ++m) {
    chains.emplace(m, threshold_chain(m, n_max));
    check_chain(chains.at(m), m, report, "m=" + num(m) + ".", false);
  }
  if (n_max >= 2) report.add_note(kTerminalNote);

  for (std::int64_t n = 1; n <= n_max; ++n) {
    std::int64_t cells = 0;
    std::int64_t small_mean_cells = 0;
    std::optional<BigRational> min_tail;
    ProofReport failures;
    for (std::int64_t k = 1; k < grid; ++k) {
      const BinomialSpec spec(n, BigRational(BigInt(k), BigInt(grid)));
      numeric::Verdict hyp;
      try {
        hyp = bounds::theorem_hypothesis(spec, max_precision_bits);
      } catch (const UndecidedError& e) {
        failures.add(ProofStep{"n=" + num(n) + ".p=" + spec.p().str() + ".hypothesis", "theorem.hypothesis",
                               StepVerdict::Undecided, {}, e.what()});
        continue;
      }
      if (!hyp.value) continue;
      ++cells;
      const binom::ExceedanceRecord rec = binom::tail_gt_mean(spec);
      if (!min_tail || rec.tail < *min_tail) min_tail = rec.tail;

      ProofReport scratch;
      const std::string prefix = "n=" + num(n) + ".p=" + spec.p().str() + ".";
      if (spec.mean() < BigRational(1)) {
        ++small_mean_cells;
        check_small_mean(spec, max_precision_bits, scratch, prefix);
      } else {
        const std::vector<ChainStep>& chain = chains.at(rec.m);
        const BigRational& at_n = chain[static_cast<std::size_t>(n - rec.m)].value;
        check_reduction(spec, rec.m, rec.tail, at_n, scratch, prefix);
      }
      check_conclusion(spec, rec.tail, scratch, prefix);
      for (const ProofStep& s : scratch.steps()) {
        if (s.verdict != StepVerdict::True) failures.add(s);
      }
    }

    std::vector<Witness> w{rational_witness("cells", BigRational(static_cast<long>(cells))),
                           rational_witness("small-mean cells", BigRational(static_cast<long>(small_mean_cells)))};
    if (min_tail) w.push_back(rational_witness("min P(X > EX)", *min_tail));
    report.add("n=" + num(n) + ".cells", "theorem.bound", failures.steps().empty(), std::move(w));
    report.append(failures);
  }
  return report;
}

ProofReport verify_proposition_proof(std::int64_t n, std::int64_t grid_size, int precision_bits) {
  if (n < 1 || grid_size < 3) throw PreconditionError("verify_proposition_proof requires n >= 1, grid_size >= 3");
  ProofReport report("proposition proof, n = " + num(n));
  const BigRational nn(n);
  auto g = [&](const BigRational& p) { return (BigRational(1) - (BigRational(1) - p).pow(n)) / (nn * p); };

  bool non_increasing = true;
  bool strictly = true;
  std::optional<std::int64_t> violation;
  BigRational prev = g(BigRational(BigInt(1), BigInt(grid_size)));
  const BigRational first = prev;
  for (std::int64_t k = 2; k <= grid_size; ++k) {
    const BigRational cur = g(BigRational(BigInt(k), BigInt(grid_size)));
    if (cur > prev && !violation) violation = k;
    non_increasing = non_increasing && cur <= prev;
    strictly = strictly && cur < prev;
    prev = cur;
  }
  std::vector<Witness> w{rational_witness("g(1/grid)", first), rational_witness("g(1)", prev)};
  if (violation) w.push_back(rational_witness("first increase at k", BigRational(static_cast<long>(*violation))));
  report.add("g.non-increasing", "proposition.g-decreasing", non_increasing, std::move(w),
             n == 1 ? "n = 1: g is constant 1" : (strictly ? "strictly decreasing on the grid" : "non-strict"));

  const Enclosure c = numeric::c_enclosure(precision_bits);
  const Enclosure b = numeric::b_enclosure(precision_bits);
  const BigRational g_lo = g(c.lo() / nn);
  report.add("g.at-c.lo", "proposition.g-at-c", g_lo >= b.lo(),
             {rational_witness("g(c.lo/n)", g_lo), enclosure_witness("b", b)});
  // g is decreasing and c <= c.hi, so g(c/n) >= g(c.hi/n) >= b.hi certifies g(c/n) >= b.
  const BigRational g_hi = g(c.hi() / nn);
  report.add("g.at-c.hi", "proposition.g-at-c", g_hi >= b.hi(),
             {rational_witness("g(c.hi/n)", g_hi), enclosure_witness("b", b)});
  return report;
}

ProofReport verify_proposition_sweep(std::int64_t n_max, std::int64_t grid, int max_precision_bits) {
  if (n_max < 1) throw PreconditionError("verify_proposition_sweep requires n_max >= 1");
  ProofReport report("proposition sweep, n <= " + num(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    report.append(verify_proposition_proof(n, grid), "n=" + num(n) + ".");
  }
  try {
    const bounds::SweepSummary s = bounds::proposition_sweep(1, n_max, grid, max_precision_bits);
    std::vector<Witness> w{rational_witness("cells", BigRational(static_cast<long>(s.cells)))};
    for (const auto& f : s.failures) {
      w.push_back(rational_witness("failure n=" + num(f.n) + " p", f.p));
    }
    report.add("bound.sweep", "proposition.bound", s.passed(), std::move(w));
  } catch (const UndecidedError& e) {
    report.add(ProofStep{"bound.sweep", "proposition.bound", StepVerdict::Undecided, {}, e.what()});
  }
  return report;
}

ProofReport anderson_samuels_sweep(std::int64_t m_max, std::int64_t n_max) {
  if (m_max < 2 || n_max < m_max) throw PreconditionError("anderson_samuels_sweep requires 2 <= m_max <= n_max");
  ProofReport report("threshold chain sweep, m <= " + num(m_max) + ", n <= " + num(n_max));
  for (std::int64_t m = 2; m <= m_max; ++m) {
    const std::vector<ChainStep> chain = threshold_chain(m, n_max);
    check_chain(chain, m, report, "m=" + num(m) + ".", false);
  }
  report.add_note(kTerminalNote);
  return report;
}

}  // namespace binexceed::proof
