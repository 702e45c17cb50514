#include "binexceed/proof/appendix.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>

#include "binexceed/bounds/bounds.hpp"
#include "binexceed/errors.hpp"
#include "binexceed/proof/main_proof.hpp"

namespace binexceed::proof {

using numeric::CertifiedReal;
using numeric::Relation;
using numeric::Verdict;

namespace {

const BigRational kQuarter(1, 4);
const BigRational kHalf(1, 2);
// Tolerance of the finite-difference checks of the derivative formulas.
const BigRational kRelativeTolerance(1, 1000000);
// Central-difference step is n * kStepScale; evaluated at kDifferencePrecision bits.
const BigRational kStepScale(1, 10000);
constexpr int kDifferencePrecision = 200;
constexpr std::int64_t kCellNMax = 200;
constexpr std::int64_t kSampleNMax = 60;
constexpr std::int64_t kCrossCheckNMax = 30;

std::string num(std::int64_t v) { return std::to_string(v); }

BigRational frac(std::int64_t a, std::int64_t b) { return BigRational(BigInt(a), BigInt(b)); }

BigRational count(std::int64_t v) { return BigRational(static_cast<long>(v)); }

int snap_bits(int bits) { return std::min(bits + 4, numeric::kMaxPrecisionBits + 4); }

BigRational upper_abs(const Enclosure& e) { return std::max(abs(e.lo()), abs(e.hi())); }

BigRational lower_abs(const Enclosure& e) {
  if (e.lo().sign() > 0) return e.lo();
  if (e.hi().sign() < 0) return -e.hi();
  return BigRational(0);
}

// Upper bound of |numeric - reference| / |reference|, or nullopt when the
// reference enclosure contains zero.
std::optional<BigRational> relative_error_bound(const Enclosure& numeric_value, const Enclosure& reference) {
  const BigRational denom = lower_abs(reference);
  if (denom.is_zero()) return std::nullopt;
  return upper_abs(numeric_value - reference) / denom;
}

void add_relative_error_step(ProofReport& report, const std::string& id, const std::string& anchor,
                             const Enclosure& numeric_value, const Enclosure& reference) {
  const std::optional<BigRational> rel = relative_error_bound(numeric_value, reference);
  std::vector<Witness> w{enclosure_witness("finite difference", numeric_value),
                         enclosure_witness("formula", reference)};
  if (rel) w.push_back(rational_witness("relative error bound", *rel));
  w.push_back(rational_witness("tolerance", kRelativeTolerance));
  report.add(id, anchor, rel && *rel <= kRelativeTolerance, std::move(w));
}

// Runs check(n) for n in [lo, hi] and folds the results into one step.
// check returns true/false or throws UndecidedError.
void add_scan_step(ProofReport& report, const std::string& id, const std::string& anchor, std::int64_t lo,
                   std::int64_t hi, const std::function<bool(std::int64_t)>& check,
                   std::vector<Witness> witnesses = {}, std::string note = {}) {
  std::optional<std::int64_t> first_false;
  std::optional<std::int64_t> first_undecided;
  std::string undecided_what;
  std::int64_t checked = 0;
  for (std::int64_t n = lo; n <= hi; ++n) {
    ++checked;
    try {
      if (!check(n) && !first_false) first_false = n;
    } catch (const UndecidedError& e) {
      if (!first_undecided) {
        first_undecided = n;
        undecided_what = e.what();
      }
    }
  }
  witnesses.push_back(rational_witness("from", count(lo)));
  witnesses.push_back(rational_witness("to", count(hi)));
  witnesses.push_back(rational_witness("checked", count(checked)));
  StepVerdict verdict = StepVerdict::True;
  if (first_false) {
    verdict = StepVerdict::False;
    witnesses.push_back(rational_witness("first failure", count(*first_false)));
  } else if (first_undecided) {
    verdict = StepVerdict::Undecided;
    witnesses.push_back(rational_witness("first undecided", count(*first_undecided)));
    note = note.empty() ? undecided_what : note + "; " + undecided_what;
  }
  report.add(ProofStep{id, anchor, verdict, std::move(witnesses), std::move(note)});
}

bool certified(const CertifiedReal& a, Relation rel, const CertifiedReal& b) {
  return numeric::compare_certified(a, rel, b).value;
}

// rho / sigma^3 = (p^2 + q^2) / sqrt(pq).
Enclosure ratio_enclosure(const BigRational& p, int bits) {
  const BigRational q = BigRational(1) - p;
  return (Enclosure(p * p + q * q) / numeric::sqrt_enclosure(p * q, bits)).rounded_outward(snap_bits(bits));
}

CertifiedReal ratio_certified(const BigRational& p) {
  return CertifiedReal(CertifiedReal::Generator([p](int bits) { return ratio_enclosure(p, bits); }));
}

// ln(1 - f3(x)) = ln(2 - 1/x) + (x - 1) ln(1 - 1/x).
Enclosure log_one_minus_f3(const BigRational& x, int bits) {
  const BigRational inv = BigRational(1) / x;
  return numeric::ln_enclosure(BigRational(2) - inv, bits) +
         Enclosure(x - BigRational(1)) * numeric::ln_enclosure(BigRational(1) - inv, bits);
}

// ln(f1_tilde(x)) = ln((3x - 2)/(x - 2)) + x ln(1 - 2/x).
Enclosure log_f1_tilde(const BigRational& x, int bits) {
  return numeric::ln_enclosure((BigRational(3) * x - BigRational(2)) / (x - BigRational(2)), bits) +
         Enclosure(x) * numeric::ln_enclosure(BigRational(1) - BigRational(2) / x, bits);
}

Enclosure f1_tilde_log_derivative_at(const BigRational& x, int bits) {
  const BigRational two(2);
  const BigRational rational_part = (BigRational(6) * x - BigRational(8)) / ((x - two) * (BigRational(3) * x - two));
  return numeric::ln_enclosure(BigRational(1) - two / x, bits) + Enclosure(rational_part);
}

}  // namespace

BerryEsseenEval berry_esseen_epsilon(std::int64_t n, const BigRational& p, int precision_bits) {
  if (n < 1) throw PreconditionError("berry_esseen_epsilon requires n >= 1");
  if (p.sign() <= 0 || p >= BigRational(1)) throw DomainError("berry_esseen_epsilon requires 0 < p < 1");
  const BigRational q = BigRational(1) - p;
  BerryEsseenEval out{n, p, p * q, p * q * (p * p + q * q), Enclosure(BigRational(0)), Enclosure(BigRational(0))};
  out.ratio = ratio_enclosure(p, precision_bits);
  out.epsilon = (Enclosure(kBerryEsseenC3) * (out.ratio + Enclosure(kBerryEsseenC2)) /
                 numeric::sqrt_enclosure(BigRational(n), precision_bits))
                    .rounded_outward(snap_bits(precision_bits));
  return out;
}

CertifiedReal epsilon_certified(std::int64_t n, const BigRational& p) {
  berry_esseen_epsilon(n, p, numeric::kMinPrecisionBits);  // validates the arguments
  return CertifiedReal(
      CertifiedReal::Generator([n, p](int bits) { return berry_esseen_epsilon(n, p, bits).epsilon; }));
}

CertifiedReal epsilon_star(std::int64_t n) {
  if (n < 3) throw PreconditionError("epsilon_star requires n >= 3");
  return epsilon_certified(n, frac(2, n));
}

CertifiedReal epsilon_star_dominating(std::int64_t n) {
  if (n < 3) throw PreconditionError("epsilon_star_dominating requires n >= 3");
  return CertifiedReal(CertifiedReal::Generator([n](int bits) {
    const BigRational two_q = BigRational(2) * (BigRational(1) - frac(2, n));
    const Enclosure first = Enclosure(BigRational(1)) / numeric::sqrt_enclosure(two_q, bits);
    const Enclosure second = Enclosure(kBerryEsseenC2) / numeric::sqrt_enclosure(BigRational(n), bits);
    return (Enclosure(kBerryEsseenC3) * (first + second)).rounded_outward(snap_bits(bits));
  }));
}

BigRational f3(std::int64_t n) {
  if (n < 1) throw PreconditionError("f3 requires n >= 1");
  const BigRational inv = frac(1, n);
  return BigRational(1) - (BigRational(2) - inv) * (BigRational(1) - inv).pow(n - 1);
}

BigRational f1(const BigRational& p, std::int64_t n) {
  if (n < 1) throw PreconditionError("f1 requires n >= 1");
  return p.pow(n) + BigRational(n) * p.pow(n - 1) * (BigRational(1) - p);
}

BigRational f1_tilde(std::int64_t n) {
  if (n < 3) throw PreconditionError("f1_tilde requires n >= 3");
  return frac(3 * n - 2, n - 2) * (BigRational(1) - frac(2, n)).pow(n);
}

CertifiedReal f1_tilde_log_derivative(std::int64_t n) {
  if (n < 3) throw PreconditionError("f1_tilde_log_derivative requires n >= 3");
  return CertifiedReal::ln(BigRational(1) - frac(2, n)) +
         CertifiedReal(frac(6 * n - 8, (n - 2) * (3 * n - 2)));
}

std::string case_condition(int case_id) {
  switch (case_id) {
    case 1: return "np >= 2 and nq >= 2";
    case 2: return "c <= np < 1";
    case 3: return "1 <= np < 2 and n >= 3";
    case 4: return "1 < nq <= 2 and n >= 3";
    case 5: return "0 < nq <= 1 and n >= 2";
    default: throw PreconditionError("case id must be in 1..5");
  }
}

std::vector<int> applicable_cases(const BinomialSpec& spec, int max_precision_bits) {
  const BigRational np = spec.mean();
  const BigRational nq = BigRational(spec.n()) - np;
  const BigRational one(1);
  const BigRational two(2);
  std::vector<int> out;
  if (np >= two && nq >= two) out.push_back(1);
  if (np < one && numeric::compare_certified(np, Relation::GreaterEqual, CertifiedReal::c(), max_precision_bits).value) {
    out.push_back(2);
  }
  if (np >= one && np < two && spec.n() >= 3) out.push_back(3);
  if (nq > one && nq <= two && spec.n() >= 3) out.push_back(4);
  if (nq.sign() > 0 && nq <= one && spec.n() >= 2) out.push_back(5);
  return out;
}

bool cases_cover(const BinomialSpec& spec, int max_precision_bits) {
  return !applicable_cases(spec, max_precision_bits).empty();
}

AppendixCase classify_case(const BinomialSpec& spec, int max_precision_bits) {
  if (!bounds::theorem_hypothesis(spec, max_precision_bits).value) {
    throw PreconditionError("classify_case requires 1 > p >= c/n; got n = " + num(spec.n()) +
                            ", p = " + spec.p().str());
  }
  const std::vector<int> cases = applicable_cases(spec, max_precision_bits);
  AppendixCase out;
  if (cases.empty()) return out;
  out.case_id = cases.front();
  out.condition = case_condition(out.case_id);

  const std::int64_t n = spec.n();
  const BigRational& p = spec.p();
  const binom::ExceedanceRecord rec = binom::tail_gt_mean(spec);
  out.witness.push_back(rational_witness("P(X > EX)", rec.tail));
  bool route = false;
  switch (out.case_id) {
    case 1: {
      const BerryEsseenEval be = berry_esseen_epsilon(n, p, numeric::kDefaultPrecisionBits);
      out.witness.push_back(enclosure_witness("eps(n,p)", be.epsilon));
      route = numeric::compare_certified(epsilon_certified(n, p), Relation::Less, kQuarter, max_precision_bits).value;
      break;
    }
    case 2: {
      ProofReport scratch;
      route = check_small_mean(spec, max_precision_bits, scratch, "");
      out.witness.push_back(rational_witness("1 - q^n", BigRational(1) - spec.q().pow(n)));
      break;
    }
    case 3: {
      const BigRational bound = f3(n);
      out.witness.push_back(rational_witness("f3(n)", bound));
      route = rec.m == 2 && rec.tail >= bound && bound > kQuarter;
      break;
    }
    case 4: {
      const BigRational bound = f1_tilde(n);
      out.witness.push_back(rational_witness("f1~(n)", bound));
      route = rec.m == n - 1 && rec.tail == f1(p, n) && rec.tail >= bound && bound > kQuarter;
      break;
    }
    case 5: {
      const BigRational bound = (BigRational(1) - frac(1, n)).pow(n);
      out.witness.push_back(rational_witness("(1-1/n)^n", bound));
      route = rec.m == n && rec.tail == p.pow(n) && rec.tail >= bound && bound >= kQuarter;
      break;
    }
    default: break;
  }
  const BigRational gap = rec.tail - kQuarter;
  out.verdict.value = route && gap.sign() >= 0;
  out.verdict.witness = Enclosure(gap);
  out.verdict.detail = "case " + std::to_string(out.case_id) + ": " + out.condition;
  return out;
}

ProofReport verify_case1(std::int64_t n_scan_max, std::int64_t n_tail_start, int precision_bits) {
  if (n_tail_start < 90 || n_scan_max < n_tail_start) {
    throw PreconditionError("verify_case1 requires n_scan_max >= n_tail_start >= 90");
  }
  if (precision_bits < numeric::kMinPrecisionBits || precision_bits > numeric::kMaxPrecisionBits) {
    throw PreconditionError("verify_case1: precision_bits out of range");
  }
  const std::int64_t big_n = n_scan_max;
  const std::int64_t t = n_tail_start;
  const std::int64_t grid = 1000;
  ProofReport report("case 1: np >= 2, nq >= 2");

  // (a) convexity in p on the grid k/1000.
  add_scan_step(report, "case1.ratio-convex", "case1.convexity", 2, grid - 2,
                [&](std::int64_t k) {
                  const BigRational h = frac(1, grid);
                  const BigRational p = frac(k, grid);
                  const CertifiedReal second = ratio_certified(p - h) - CertifiedReal(BigRational(2)) * ratio_certified(p) +
                                               ratio_certified(p + h);
                  return certified(second, Relation::Greater, BigRational(0));
                },
                {rational_witness("grid step", frac(1, grid))},
                "second differences of rho/sigma^3 in p");
  for (const std::int64_t n : {std::int64_t{4}, t - 1, t, big_n}) {
    const CertifiedReal star = epsilon_star(n);
    const BigRational lo_p = frac(2, n);
    const BigRational hi_p = BigRational(1) - lo_p;
    add_scan_step(report, "case1.eps-convex.n=" + num(n), "case1.convexity", 2, grid - 2, [&](std::int64_t k) {
      const BigRational h = frac(1, grid);
      const BigRational p = frac(k, grid);
      const CertifiedReal second = epsilon_certified(n, p - h) - CertifiedReal(BigRational(2)) * epsilon_certified(n, p) +
                                   epsilon_certified(n, p + h);
      return certified(second, Relation::Greater, BigRational(0));
    });
    // Convexity and p <-> q symmetry put the maximum over [2/n, 1 - 2/n] at the endpoints.
    add_scan_step(report, "case1.endpoint-max.n=" + num(n), "case1.convexity", 1, grid - 1, [&](std::int64_t k) {
      const BigRational p = frac(k, grid);
      if (p <= lo_p || p >= hi_p) return true;
      return certified(epsilon_certified(n, p), Relation::Less, star);
    });
  }

  // eps_*(n) enclosures at the requested precision.
  for (const std::int64_t n : {std::int64_t{4}, t - 1, t}) {
    report.add("case1.eps-star.n=" + num(n), "case1.eps-star", true,
               {enclosure_witness("eps_*(n)", epsilon_star(n).at(precision_bits))});
  }

  // (b) monotonicity pattern on integers.
  auto decreasing = [](std::int64_t n) { return certified(epsilon_star(n), Relation::Greater, epsilon_star(n + 1)); };
  auto increasing = [](std::int64_t n) { return certified(epsilon_star(n), Relation::Less, epsilon_star(n + 1)); };
  add_scan_step(report, "case1.eps-star-decreasing[4,6]", "case1.monotonicity", 4, 5, decreasing);
  add_scan_step(report, "case1.eps-star-increasing[7," + num(t - 1) + "]", "case1.monotonicity", 7, t - 2,
                increasing);
  add_scan_step(report, "case1.eps-star-decreasing[" + num(t) + "," + num(big_n) + "]", "case1.monotonicity", t,
                big_n - 1, decreasing);

  // Integer argmax by a running certified maximum.
  std::int64_t argmax = 4;
  try {
    for (std::int64_t n = 5; n <= big_n; ++n) {
      if (certified(epsilon_star(n), Relation::Greater, epsilon_star(argmax))) argmax = n;
    }
    report.add("case1.argmax", "case1.monotonicity", argmax == t - 1 || argmax == t,
               {rational_witness("argmax eps_*(n), n in [4, N]", count(argmax)),
                enclosure_witness("max eps_*", epsilon_star(argmax).at(precision_bits))});
    report.add_note("integer argmax of eps_*(n) over [4, " + num(big_n) + "] is n = " + num(argmax));
  } catch (const UndecidedError& e) {
    report.add(ProofStep{"case1.argmax", "case1.monotonicity", StepVerdict::Undecided, {}, e.what()});
  }

  // (c) eps_*(n) < 0.24413 on the scanned range.
  add_scan_step(report, "case1.eps-star-below-threshold", "case1.bound", 4, big_n,
                [](std::int64_t n) { return certified(epsilon_star(n), Relation::Less, kEpsilonThreshold); },
                {rational_witness("threshold", kEpsilonThreshold)});

  // (d) beyond N: eps_*(n) <= D(n) <= D(N) < 0.24413, D decreasing.
  add_scan_step(report, "case1.dominating-above-eps-star", "case1.dominating", 4, big_n,
                [](std::int64_t n) { return certified(epsilon_star_dominating(n), Relation::Greater, epsilon_star(n)); });
  add_scan_step(report, "case1.dominating-decreasing", "case1.dominating", t, big_n - 1, [](std::int64_t n) {
    return certified(epsilon_star_dominating(n), Relation::Greater, epsilon_star_dominating(n + 1));
  });
  add_certified_step(report, "case1.dominating-below-threshold.n=" + num(big_n), "case1.dominating",
                     epsilon_star_dominating(big_n), Relation::Less, kEpsilonThreshold, numeric::kMaxPrecisionBits,
                     {enclosure_witness("D(N)", epsilon_star_dominating(big_n).at(precision_bits)),
                      rational_witness("threshold", kEpsilonThreshold)});

  // (e) 1/2 - max(eps_*(4), eps_*(t-1), eps_*(t)) > 0.25587.
  {
    bool ok = true;
    bool undecided = false;
    std::vector<Witness> w;
    for (const std::int64_t n : {std::int64_t{4}, t - 1, t}) {
      const CertifiedReal margin = CertifiedReal(kHalf) - epsilon_star(n);
      w.push_back(enclosure_witness("1/2 - eps_*(" + num(n) + ")", margin.at(precision_bits)));
      try {
        ok = certified(margin, Relation::Greater, kHalf - kEpsilonThreshold) && ok;
      } catch (const UndecidedError&) {
        undecided = true;
      }
    }
    w.push_back(rational_witness("bound", kHalf - kEpsilonThreshold));
    report.add(ProofStep{"case1.conclusion", "case1.conclusion",
                         !ok ? StepVerdict::False : (undecided ? StepVerdict::Undecided : StepVerdict::True),
                         std::move(w), {}});
  }

  // Sanity check of the normal approximation bound on exact tails.
  add_scan_step(report, "case1.berry-esseen-exact-tails", "case1.berry-esseen", 4, 40, [](std::int64_t n) {
    for (std::int64_t k = 1; k < 100; ++k) {
      const BinomialSpec spec(n, frac(k, 100));
      const BigRational np = spec.mean();
      if (np < BigRational(2) || BigRational(n) - np < BigRational(2)) continue;
      const BigRational tail = binom::tail_gt_mean(spec).tail;
      if (!certified(tail, Relation::GreaterEqual, CertifiedReal(kHalf) - epsilon_certified(n, spec.p()))) {
        return false;
      }
    }
    return true;
  }, {}, "P(X > np) >= 1/2 - eps(n, p) on p = k/100");
  return report;
}

ProofReport verify_case2(std::int64_t n_max, std::int64_t grid, int max_precision_bits) {
  if (n_max < 1 || grid < 2) throw PreconditionError("verify_case2 requires n_max >= 1 and grid >= 2");
  ProofReport report("case 2: c <= np < 1");
  std::int64_t cells = 0;
  ProofReport failures;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (std::int64_t k = 1; k < grid && k * n < grid; ++k) {
      const BinomialSpec spec(n, frac(k, grid));
      ProofReport scratch;
      const std::string prefix = "case2.n=" + num(n) + ".p=" + spec.p().str() + ".";
      try {
        if (!bounds::theorem_hypothesis(spec, max_precision_bits).value) continue;
      } catch (const UndecidedError& e) {
        failures.add(ProofStep{prefix + "hypothesis", "case2.small-mean", StepVerdict::Undecided, {}, e.what()});
        continue;
      }
      ++cells;
      check_small_mean(spec, max_precision_bits, scratch, prefix);
      for (const ProofStep& s : scratch.steps()) {
        if (s.verdict != StepVerdict::True) failures.add(s);
      }
    }
  }
  report.add("case2.cells", "case2.small-mean", failures.steps().empty(),
             {rational_witness("cells", count(cells)), rational_witness("n max", count(n_max)),
              rational_witness("grid", count(grid))});
  report.append(failures);

  // The constant cannot be lowered: c1 = 1/4 already fails at a finite n.
  const bounds::OptimalityWitness w = bounds::optimality_search(kQuarter, 100, max_precision_bits);
  std::vector<Witness> ws{rational_witness("c1", w.c1), enclosure_witness("1 - e^-c1", w.limit_enclosure)};
  if (w.n) ws.push_back(rational_witness("n", count(*w.n)));
  if (w.tail) ws.push_back(rational_witness("tail", *w.tail));
  report.add("case2.optimality", "main.optimality", w.tail && *w.tail < kQuarter && w.limit_enclosure.hi() < kQuarter,
             std::move(ws));
  return report;
}

ProofReport verify_case3(std::int64_t n_max) {
  if (n_max < 3) throw PreconditionError("verify_case3 requires n_max >= 3");
  ProofReport report("case 3: 1 <= np < 2, n >= 3");
  const std::int64_t sample_max = std::min(n_max, kSampleNMax);
  const std::vector<BigRational> multipliers{BigRational(1), frac(8, 7), frac(3, 2), frac(199, 100)};

  add_scan_step(report, "case3.identity", "case3.tail", 3, sample_max, [&](std::int64_t n) {
    for (const BigRational& t : multipliers) {
      const BinomialSpec spec(n, t / BigRational(n));
      const BigRational q = spec.q();
      const binom::ExceedanceRecord rec = binom::tail_gt_mean(spec);
      const BigRational formula = BigRational(1) - q.pow(n) - BigRational(n) * q.pow(n - 1) * spec.p();
      if (rec.m != 2 || rec.tail != formula) return false;
    }
    return true;
  }, {}, "P(X > np) = 1 - q^n - n q^(n-1) p at np in {1, 8/7, 3/2, 199/100}");

  add_scan_step(report, "case3.reduce-to-1/n", "case3.tail", 3, sample_max, [&](std::int64_t n) {
    const BigRational at_one = binom::survival(BinomialSpec(n, frac(1, n)), 2);
    for (const BigRational& t : multipliers) {
      const BigRational tail = binom::tail_gt_mean(BinomialSpec(n, t / BigRational(n))).tail;
      if (t == BigRational(1) ? tail != at_one : tail <= at_one) return false;
    }
    return true;
  });

  const BigRational anchor(7, 27);
  report.add("case3.f3-anchor", "case3.f3", f3(3) == anchor && binom::survival(BinomialSpec(3, frac(1, 3)), 2) == anchor,
             {rational_witness("f3(3)", f3(3)), rational_witness("P(X_{3,1/3} >= 2)",
                                                                  binom::survival(BinomialSpec(3, frac(1, 3)), 2))});
  add_scan_step(report, "case3.f3-is-tail", "case3.f3", 3, std::min(n_max, kCellNMax),
                [](std::int64_t n) { return f3(n) == binom::survival(BinomialSpec(n, frac(1, n)), 2); });
  add_scan_step(report, "case3.f3-increasing", "case3.f3", 3, n_max - 1,
                [](std::int64_t n) { return f3(n) < f3(n + 1); });

  for (const std::int64_t n : {3, 10, 50}) {
    const BigRational x(n);
    const BigRational h = x * kStepScale;
    const Enclosure second =
        (log_one_minus_f3(x + h, kDifferencePrecision) - Enclosure(BigRational(2)) * log_one_minus_f3(x, kDifferencePrecision) +
         log_one_minus_f3(x - h, kDifferencePrecision)) /
        Enclosure(h * h);
    const BigRational formula =
        BigRational(1) / (BigRational((2 * n - 1) * (2 * n - 1)) * BigRational((n - 1) * n));
    add_relative_error_step(report, "case3.second-derivative.n=" + num(n), "case3.convexity", second,
                            Enclosure(formula));
  }

  {
    // 1 - f3(N) = (2 - 1/N) e^{(N-1) ln(1 - 1/N)} -> 2/e.
    const std::int64_t big = 1000000;
    const int bits = 128;
    const Enclosure exponent =
        Enclosure(BigRational(big - 1)) * numeric::ln_enclosure(BigRational(1) - frac(1, big), bits);
    const Enclosure one_minus_f3 =
        Enclosure(BigRational(2) - frac(1, big)) * numeric::exp_enclosure(exponent.rounded_outward(bits + 8), bits);
    const Enclosure two_over_e = Enclosure(BigRational(2)) * numeric::exp_enclosure(BigRational(-1), bits);
    const Enclosure diff = one_minus_f3 - two_over_e;
    const BigRational tol(1, 10000);
    report.add("case3.limit", "case3.limit", upper_abs(diff) <= tol,
               {enclosure_witness("1 - f3(10^6)", one_minus_f3), enclosure_witness("2/e", two_over_e),
                rational_witness("tolerance", tol)});
  }
  report.add("case3.conclusion", "case3.conclusion", f3(3) > kQuarter, {rational_witness("f3(3)", f3(3))});
  return report;
}

ProofReport verify_case4(std::int64_t n_max) {
  if (n_max < 3) throw PreconditionError("verify_case4 requires n_max >= 3");
  ProofReport report("case 4: 1 < nq <= 2, n >= 3");
  const std::int64_t sample_max = std::min(n_max, kSampleNMax);
  const std::vector<BigRational> nq_values{BigRational(2), frac(3, 2), frac(101, 100)};

  add_scan_step(report, "case4.identity", "case4.tail", 3, sample_max, [&](std::int64_t n) {
    for (const BigRational& t : nq_values) {
      const BinomialSpec spec(n, BigRational(1) - t / BigRational(n));
      const binom::ExceedanceRecord rec = binom::tail_gt_mean(spec);
      if (rec.m != n - 1 || rec.tail != f1(spec.p(), n)) return false;
      if (rec.tail != binom::survival(spec, n - 1)) return false;
    }
    return true;
  }, {}, "P(X > np) = P(X >= n-1) = f1(p, n) at nq in {2, 3/2, 101/100}");

  for (const std::int64_t n : {3, 4, 5, 10, 50}) {
    const BigRational start = BigRational(1) - frac(2, n);
    const BigRational step = frac(2, n) / BigRational(100);
    add_scan_step(report, "case4.f1-increasing.n=" + num(n), "case4.f1", 0, 99, [&](std::int64_t k) {
      const BigRational p = start + step * BigRational(static_cast<long>(k));
      return f1(p, n) < f1(p + step, n);
    }, {rational_witness("p step", step)});
  }

  add_scan_step(report, "case4.reduce-to-1-2/n", "case4.f1", 3, sample_max, [&](std::int64_t n) {
    for (const BigRational& t : nq_values) {
      const BigRational tail = binom::tail_gt_mean(BinomialSpec(n, BigRational(1) - t / BigRational(n))).tail;
      if (t == BigRational(2) ? tail != f1_tilde(n) : tail <= f1_tilde(n)) return false;
    }
    return true;
  });

  const BigRational anchor(7, 27);
  report.add("case4.f1-tilde-anchor", "case4.f1-tilde", f1_tilde(3) == anchor && f1(frac(1, 3), 3) == anchor,
             {rational_witness("f1~(3)", f1_tilde(3))});
  add_scan_step(report, "case4.f1-tilde-is-f1", "case4.f1-tilde", 3, std::min(n_max, kCellNMax),
                [](std::int64_t n) { return f1_tilde(n) == f1(BigRational(1) - frac(2, n), n); });
  add_scan_step(report, "case4.f1-tilde-increasing", "case4.f1-tilde", 3, n_max - 1,
                [](std::int64_t n) { return f1_tilde(n) < f1_tilde(n + 1); });

  add_scan_step(report, "case4.log-derivative-positive", "case4.log-derivative", 3, n_max,
                [](std::int64_t n) { return certified(f1_tilde_log_derivative(n), Relation::Greater, BigRational(0)); });
  add_scan_step(report, "case4.log-derivative-decreasing", "case4.log-derivative", 3, n_max - 1, [](std::int64_t n) {
    return certified(f1_tilde_log_derivative(n), Relation::Greater, f1_tilde_log_derivative(n + 1));
  });

  for (const std::int64_t n : {3, 10, 50}) {
    const BigRational x(n);
    const BigRational h = x * kStepScale;
    const Enclosure two_h(BigRational(2) * h);
    const Enclosure slope = (f1_tilde_log_derivative_at(x + h, kDifferencePrecision) -
                             f1_tilde_log_derivative_at(x - h, kDifferencePrecision)) /
                            two_h;
    const BigRational formula =
        BigRational(-4 * (3 * n * n - 4 * n + 4)) /
        (BigRational((3 * n - 2) * (3 * n - 2)) * BigRational((n - 2) * (n - 2)) * BigRational(n));
    add_relative_error_step(report, "case4.derivative-formula.n=" + num(n), "case4.log-derivative", slope,
                            Enclosure(formula));

    const Enclosure log_slope =
        (log_f1_tilde(x + h, kDifferencePrecision) - log_f1_tilde(x - h, kDifferencePrecision)) / two_h;
    add_relative_error_step(report, "case4.log-derivative-identity.n=" + num(n), "case4.log-derivative", log_slope,
                            f1_tilde_log_derivative_at(x, kDifferencePrecision));
  }

  {
    const std::int64_t big = 1000000;
    const Enclosure at_big = f1_tilde_log_derivative(big).at(128);
    const BigRational tol(1, 100000);
    report.add("case4.limit", "case4.limit", upper_abs(at_big) <= tol,
               {enclosure_witness("Df1~(10^6)", at_big), rational_witness("tolerance", tol)});
  }
  report.add("case4.conclusion", "case4.conclusion", f1_tilde(3) > kQuarter,
             {rational_witness("f1~(3)", f1_tilde(3))});
  return report;
}

ProofReport verify_case5(std::int64_t n_max) {
  if (n_max < 2) throw PreconditionError("verify_case5 requires n_max >= 2");
  ProofReport report("case 5: 0 < nq <= 1, n >= 2");
  auto power = [](std::int64_t n) { return (BigRational(1) - frac(1, n)).pow(n); };

  report.add("case5.anchor", "case5.power", power(2) == kQuarter, {rational_witness("(1-1/2)^2", power(2))});
  add_scan_step(report, "case5.power-increasing", "case5.power", 2, n_max - 1,
                [&](std::int64_t n) { return power(n) < power(n + 1); });

  const std::vector<BigRational> nq_values{BigRational(1), frac(1, 2), frac(1, 10)};
  add_scan_step(report, "case5.identity", "case5.tail", 2, std::min(n_max, kSampleNMax), [&](std::int64_t n) {
    for (const BigRational& t : nq_values) {
      const BinomialSpec spec(n, BigRational(1) - t / BigRational(n));
      const binom::ExceedanceRecord rec = binom::tail_gt_mean(spec);
      if (rec.m != n || rec.tail != spec.p().pow(n)) return false;
      if (t == BigRational(1) ? rec.tail != power(n) : rec.tail <= power(n)) return false;
    }
    return true;
  }, {}, "P(X > np) = p^n >= (1-1/n)^n at nq in {1, 1/2, 1/10}");

  const BigRational at_equality = binom::tail_gt_mean(BinomialSpec(2, kHalf)).tail;
  report.add("case5.equality", "theorem.equality", at_equality == kQuarter,
             {rational_witness("P(X_{2,1/2} > 1)", at_equality)}, "n = 2, p = 1/2 is the only equality case");
  return report;
}

ProofReport verify_appendix(std::int64_t n_max, std::int64_t grid, int max_precision_bits) {
  if (n_max < 90) throw PreconditionError("verify_appendix requires n_max >= 90");
  if (grid < 2) throw PreconditionError("verify_appendix requires grid >= 2");
  ProofReport report("appendix proof, n <= " + num(n_max));
  const std::int64_t cell_max = std::min(n_max, kCellNMax);

  report.append(verify_case1(n_max, 90, 200));
  report.append(verify_case2(cell_max, grid, max_precision_bits));
  report.append(verify_case3(n_max));
  report.append(verify_case4(n_max));
  report.append(verify_case5(n_max));

  // Every cell under the hypothesis falls in some case; small n also go
  // through the full case route and must agree with the main proof.
  std::int64_t cells = 0;
  std::array<std::int64_t, 6> per_case{};
  std::optional<std::pair<std::int64_t, std::int64_t>> uncovered;
  std::optional<std::pair<std::int64_t, std::int64_t>> disagreement;
  std::optional<std::string> undecided;
  for (std::int64_t n = 1; n <= cell_max; ++n) {
    for (std::int64_t k = 1; k < grid; ++k) {
      const BinomialSpec spec(n, frac(k, grid));
      try {
        if (!bounds::theorem_hypothesis(spec, max_precision_bits).value) continue;
        ++cells;
        const std::vector<int> cases = applicable_cases(spec, max_precision_bits);
        if (cases.empty()) {
          if (!uncovered) uncovered = {n, k};
          continue;
        }
        ++per_case[static_cast<std::size_t>(cases.front())];
        if (n <= kCrossCheckNMax) {
          const AppendixCase routed = classify_case(spec, max_precision_bits);
          const bool main_ok = verify_main_proof(spec, max_precision_bits).passed();
          if (!routed.verdict.value || !main_ok) {
            if (!disagreement) disagreement = {n, k};
          }
        }
      } catch (const UndecidedError& e) {
        if (!undecided) undecided = e.what();
      }
    }
  }
  std::vector<Witness> w{rational_witness("cells", count(cells)), rational_witness("grid", count(grid))};
  for (int c = 1; c <= 5; ++c) w.push_back(rational_witness("lowest case " + std::to_string(c), count(per_case[c])));
  if (uncovered) w.push_back(rational_witness("uncovered p", frac(uncovered->second, grid)));
  report.add(ProofStep{"coverage", "cases.coverage",
                       uncovered ? StepVerdict::False : (undecided ? StepVerdict::Undecided : StepVerdict::True),
                       std::move(w), undecided.value_or("")});

  std::vector<Witness> cw{rational_witness("n max", count(std::min(cell_max, kCrossCheckNMax)))};
  if (disagreement) {
    cw.push_back(rational_witness("n", count(disagreement->first)));
    cw.push_back(rational_witness("p", frac(disagreement->second, grid)));
  }
  report.add("cross-proof", "cases.cross-proof", !disagreement, std::move(cw),
             "case route and main proof both conclude P(X > EX) >= 1/4");
  return report;
}

}  // namespace binexceed::proof
