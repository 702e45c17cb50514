#include "binexceed/cli/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "binexceed/bounds/bounds.hpp"
#include "binexceed/errors.hpp"
#include "binexceed/parallel.hpp"
#include "binexceed/proof/appendix.hpp"
#include "binexceed/proof/main_proof.hpp"

namespace binexceed::cli {

using numeric::BigInt;
using numeric::BigRational;
using numeric::CertifiedReal;
using numeric::Relation;

namespace {

constexpr int kTailDigits = 15;
constexpr int kCsvDigits = 12;

// Thrown for bad arguments that CLI11 cannot catch itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BigRational parse_probability(const std::string& text) {
  BigRational p;
  try {
    p = BigRational::parse(text);
  } catch (const std::exception&) {
    throw UsageError("cannot parse probability '" + text + "'");
  }
  if (p.sign() < 0 || p > BigRational(1)) throw UsageError("probability must lie in [0, 1], got " + text);
  return p;
}

void require_positive(std::int64_t n, const char* name) {
  if (n < 1) throw UsageError(std::string(name) + " must be >= 1");
}

std::string exact_with_decimal(const BigRational& x) {
  if (x.is_zero()) return "0";
  return x.str() + " (" + x.to_decimal(kTailDigits) + ")";
}

std::string enclosure_text(const numeric::Enclosure& e) {
  return "[" + e.lo().to_decimal(kTailDigits) + ", " + e.hi().to_decimal(kTailDigits) + "]";
}

// Writes to `path`, or to `out` for "-".
void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

int cmd_tail(std::int64_t n, const std::string& p_text, std::ostream& out) {
  require_positive(n, "n");
  const binom::BinomialSpec spec(n, parse_probability(p_text));
  const binom::ExceedanceRecord rec = binom::tail_gt_mean(spec);
  out << exact_with_decimal(rec.tail) << "\n";
  out << "mean: " << rec.mean.str() << "\n";
  out << "m: " << rec.m << "\n";
  return kExitOk;
}

int cmd_check(std::int64_t n, const std::string& p_text, int bits, std::ostream& out) {
  require_positive(n, "n");
  const binom::BinomialSpec spec(n, parse_probability(p_text));
  const BigRational tail = binom::tail_gt_mean(spec).tail;

  if (spec.p() == BigRational(1)) {
    out << "regime: none (p = 1 violates 1 > p)\n";
    out << "P(X > EX): " << exact_with_decimal(tail) << "\n";
    out << "bound P(X > EX) >= 1/4: not applicable, tail < 1/4\n";
    return kExitFailure;
  }

  const bool theorem_regime = bounds::theorem_hypothesis(spec, bits).value;
  if (theorem_regime) {
    const bounds::TheoremVerdict v = bounds::check_theorem(spec, bits);
    out << "regime: theorem (1 > p >= c/n)\n";
    out << "P(X > EX): " << exact_with_decimal(tail) << "\n";
    out << "bound P(X > EX) >= 1/4: " << (v.bound_holds.value ? "holds" : "VIOLATED") << "\n";
    out << "strict: " << (v.strict.value ? "yes" : "no") << "\n";
    out << "equality case: " << (v.is_equality_case ? "yes" : "no") << "\n";
    return v.bound_holds.value ? kExitOk : kExitFailure;
  }

  const numeric::Verdict v = bounds::check_proposition(spec, bits);
  const BigRational lhs = BigRational(1) - spec.q().pow(n);
  out << "regime: proposition (p <= c/n)\n";
  out << "P(X > EX): " << exact_with_decimal(tail) << "\n";
  out << "1 - (1-p)^n: " << exact_with_decimal(lhs) << "\n";
  out << "bound 1 - (1-p)^n >= max(1, b n) p: " << (v.value ? "holds" : "VIOLATED") << " (" << v.detail << ")\n";
  return v.value ? kExitOk : kExitFailure;
}

struct VerifyOptions {
  std::string which;
  std::int64_t n_max = 0;  // 0: per-command default
  std::int64_t m_max = 20;
  std::int64_t grid = 1000;
  int bits = numeric::kDefaultPrecisionBits;
  std::string out_path = "-";
};

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  proof::ProofReport report;
  if (o.which == "main") {
    report = proof::verify_main_sweep(o.n_max ? o.n_max : 200, o.grid, o.bits);
  } else if (o.which == "appendix") {
    report = proof::verify_appendix(o.n_max ? o.n_max : 600, o.grid, o.bits);
  } else if (o.which == "proposition") {
    report = proof::verify_proposition_sweep(o.n_max ? o.n_max : 200, o.grid, o.bits);
  } else {
    report = proof::anderson_samuels_sweep(o.m_max, o.n_max ? o.n_max : 100);
  }
  write_text(o.out_path, report.to_json(2), out);
  (o.out_path == "-" ? err : out) << report.summary();
  if (report.passed()) return kExitOk;
  if (report.has_failure()) return kExitFailure;
  return kExitUndecided;
}

int cmd_optimality(const std::string& c1_text, std::int64_t n_max, int bits, std::ostream& out) {
  require_positive(n_max, "--nmax");
  BigRational c1;
  try {
    c1 = BigRational::parse(c1_text);
  } catch (const std::exception&) {
    throw UsageError("cannot parse c1 '" + c1_text + "'");
  }
  const bounds::OptimalityWitness w = bounds::optimality_search(c1, n_max, bits);
  out << "c1: " << w.c1.str() << "\n";
  out << "1 - e^-c1 in " << enclosure_text(w.limit_enclosure) << " < 1/4\n";
  if (w.n) {
    out << "witness: n = " << *w.n << ", p = " << w.p->str() << ", P(X > EX) = " << exact_with_decimal(*w.tail)
        << " < 1/4\n";
  } else {
    out << "no witness with n <= " << n_max << "; the limit certificate shows failure for large n\n";
  }
  return kExitOk;
}

enum class Segment { Low, Mid, High };

const char* segment_name(Segment s) {
  switch (s) {
    case Segment::Low: return "LOW";
    case Segment::Mid: return "MID";
    case Segment::High: return "HIGH";
  }
  return "HIGH";
}

int cmd_figure(std::int64_t n, std::int64_t points, int bits, const std::string& out_path, std::ostream& out) {
  require_positive(n, "n");
  if (points < 10) throw UsageError("--points must be >= 10");

  struct Row {
    BigRational p;
    BigRational tail;
    Segment segment = Segment::High;
  };
  std::vector<Row> rows(static_cast<std::size_t>(points - 1));
  const BigRational inv_n(BigInt(1), BigInt(n));
  parallel_for(rows.size(), [&](std::size_t i) {
    Row& row = rows[i];
    row.p = BigRational(BigInt(static_cast<long>(i + 1)), BigInt(points));
    const binom::BinomialSpec spec(n, row.p);
    row.tail = binom::tail_gt_mean(spec).tail;
    if (numeric::compare_certified(spec.mean(), Relation::Less, CertifiedReal::c(), bits).value) {
      row.segment = Segment::Low;
    } else if (row.p < inv_n) {
      row.segment = Segment::Mid;
    }
  });

  std::ostringstream csv;
  csv << "p,tail,segment\n";
  for (const Row& row : rows) {
    csv << row.p.to_decimal(kCsvDigits) << "," << row.tail.to_decimal(kCsvDigits) << "," << segment_name(row.segment)
        << "\n";
  }
  write_text(out_path, csv.str(), out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact binomial exceedance probabilities P(X > EX) and checks of the 1/4 lower bound"};
  app.require_subcommand(1);
  int bits = numeric::kDefaultPrecisionBits;

  std::int64_t n = 0;
  std::string p_text;
  CLI::App* tail = app.add_subcommand("tail", "print P(X > EX) exactly, with mean and m = floor(np) + 1");
  tail->add_option("n", n, "number of trials")->required();
  tail->add_option("p", p_text, "success probability, a/b or decimal")->required();

  CLI::App* check = app.add_subcommand("check", "decide the bound that applies to (n, p)");
  check->add_option("n", n, "number of trials")->required();
  check->add_option("p", p_text, "success probability, a/b or decimal")->required();

  VerifyOptions verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "run a proof verifier and write its JSON report");
  verify->add_option("which", verify_opts.which, "main, appendix, proposition or anderson-samuels")
      ->required()
      ->check(CLI::IsMember({"main", "appendix", "proposition", "anderson-samuels"}));
  verify->add_option("--nmax", verify_opts.n_max, "largest n (default 200, appendix 600, anderson-samuels 100)");
  verify->add_option("--mmax", verify_opts.m_max, "largest threshold m for anderson-samuels")->capture_default_str();
  verify->add_option("--grid", verify_opts.grid, "p-grid density")->capture_default_str();
  verify->add_option("--out", verify_opts.out_path, "report path, - for stdout")->capture_default_str();

  std::string c1_text;
  std::int64_t opt_n_max = 100;
  CLI::App* optimality = app.add_subcommand("optimality", "find n with P(X > EX) < 1/4 at p = c1/n, c1 < c");
  optimality->add_option("c1", c1_text, "candidate constant")->required();
  optimality->add_option("--nmax", opt_n_max, "largest n to scan")->capture_default_str();

  std::int64_t fig_n = 5;
  std::int64_t points = 1000;
  std::string fig_out = "-";
  CLI::App* figure = app.add_subcommand("figure", "write p,tail,segment CSV of P(X > EX) against p");
  figure->add_option("n", fig_n, "number of trials")->capture_default_str();
  figure->add_option("--points", points, "grid p = k/points")->capture_default_str();
  figure->add_option("--out", fig_out, "CSV path, - for stdout")->capture_default_str();

  for (CLI::App* sub : {tail, check, verify, optimality, figure}) {
    sub->add_option("--precision-bits", bits, "refinement cap for certified comparisons")
        ->check(CLI::Range(numeric::kMinPrecisionBits, numeric::kMaxPrecisionBits))
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*tail) return cmd_tail(n, p_text, out);
    if (*check) return cmd_check(n, p_text, bits, out);
    if (*verify) {
      verify_opts.bits = bits;
      return cmd_verify(verify_opts, out, err);
    }
    if (*optimality) return cmd_optimality(c1_text, opt_n_max, bits, out);
    if (*figure) return cmd_figure(fig_n, points, bits, fig_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UndecidedError& e) {
    err << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace binexceed::cli
