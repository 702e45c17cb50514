#include <doctest.h>

#include <json.hpp>

#include "../oracle/frozen_values.hpp"
#include "../oracle/mpfr_oracle.hpp"
#include "binexceed/bounds/bounds.hpp"
#include "binexceed/errors.hpp"
#include "binexceed/proof/appendix.hpp"
#include "binexceed/proof/main_proof.hpp"

using namespace binexceed;
using namespace binexceed::proof;

namespace {

BigRational R(const char* s) { return BigRational::parse(s); }

StepVerdict verdict_of(const ProofReport& r, const std::string& id) {
  const ProofStep* s = r.find(id);
  REQUIRE_MESSAGE(s != nullptr, id);
  return s->verdict;
}

// Enclosure lies within 10^-digits of a frozen decimal.
bool near(const numeric::Enclosure& e, const char* value, int digits) {
  const BigRational tol = BigRational(10).pow(-digits);
  return e.lo() > R(value) - tol && e.hi() < R(value) + tol;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("json layout") {
    ProofReport r("demo");
    r.add("a", "anchor.a", true, {rational_witness("x", R("3")), enclosure_witness("y", numeric::Enclosure(R("1/3"), R("1/2"), 8))});
    r.add(ProofStep{"b", "anchor.b", StepVerdict::Undecided, {}, "cap"});
    r.add_note("n1");
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j["title"] == "demo");
    CHECK(j["passed"] == false);
    CHECK(j["steps"][0]["step_id"] == "a");
    CHECK(j["steps"][0]["paper_anchor"] == "anchor.a");
    CHECK(j["steps"][0]["verdict"] == "TRUE");
    CHECK(j["steps"][0]["witnesses"][0]["rational"] == "3/1");
    CHECK(j["steps"][0]["witnesses"][1]["enclosure"][0] == "1/3");
    CHECK(j["steps"][0]["witnesses"][1]["enclosure"][1] == "1/2");
    CHECK(j["steps"][1]["verdict"] == "UNDECIDED");
    CHECK(j["steps"][1]["note"] == "cap");
    CHECK(j["notes"][0] == "n1");
    CHECK(r.has_undecided());
    CHECK_FALSE(r.has_failure());
    CHECK_FALSE(ProofReport("empty").passed());
  }
}

TEST_SUITE("main proof") {
  TEST_CASE("equality case (2, 1/2)") {
    const ProofReport r = verify_main_proof(BinomialSpec(2, R("1/2")));
    CHECK(r.passed());
    const ProofStep* terminal = r.find("chain.terminal");
    REQUIRE(terminal);
    CHECK(std::get<BigRational>(terminal->witnesses[0].value) == R("1/4"));
    CHECK(r.find("chain.j=2") == nullptr);  // single-node chain
    CHECK(r.find("conclusion")->note.find("equality") != std::string::npos);
    CHECK_FALSE(r.notes().empty());
  }

  TEST_CASE("(3, 1/3): chain 1/4 -> 7/27") {
    const ProofReport r = verify_main_proof(BinomialSpec(3, R("1/3")));
    CHECK(r.passed());
    const ProofStep* step = r.find("chain.j=2");
    REQUIRE(step);
    CHECK(std::get<BigRational>(step->witnesses[0].value) == R("1/4"));
    CHECK(std::get<BigRational>(step->witnesses[1].value) == R("7/27"));
  }

  TEST_CASE("(5, 9/10): strict reduction to p_5 = 4/5") {
    const ProofReport r = verify_main_proof(BinomialSpec(5, R("9/10")));
    CHECK(r.passed());
    const ProofStep* step = r.find("reduce-to-p_n");
    REQUIRE(step);
    CHECK(std::get<BigRational>(step->witnesses[0].value) == R("4/5"));
    CHECK(std::get<BigRational>(step->witnesses[1].value) == R("59049/100000"));
    CHECK(std::get<BigRational>(step->witnesses[2].value) == R("1024/3125"));
    CHECK(step->note.find("strict") != std::string::npos);
  }

  TEST_CASE("small-mean branch") {
    const ProofReport r = verify_main_proof(BinomialSpec(10, R("3/100")));
    CHECK(r.passed());
    CHECK(verdict_of(r, "small-mean.q^n<=q^(c/p)") == StepVerdict::True);
    CHECK(verdict_of(r, "small-mean.q^(c/p)<3/4") == StepVerdict::True);
  }

  TEST_CASE("precondition") {
    CHECK_THROWS_AS(verify_main_proof(BinomialSpec(10, R("1/100"))), PreconditionError);
    CHECK_THROWS_AS(verify_main_proof(BinomialSpec(10, R("1"))), PreconditionError);
  }

  TEST_CASE("threshold chain") {
    const std::vector<ChainStep> chain = threshold_chain(3, 8);
    REQUIRE(chain.size() == 6);
    for (const ChainStep& s : chain) CHECK(s.p_j * BigRational(s.j) == BigRational(2));
    CHECK(chain.front().value == R("8/27"));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) CHECK(chain[i].value < chain[i + 1].value);
    CHECK_THROWS_AS(threshold_chain(1, 5), PreconditionError);
  }

  TEST_CASE("sweeps") {
    CHECK(verify_main_sweep(25, 100).passed());
    const ProofReport as = anderson_samuels_sweep(6, 30);
    CHECK(as.passed());
    CHECK(as.find("m=3.chain") != nullptr);
  }

  TEST_CASE("proposition proof") {
    const ProofReport one = verify_proposition_proof(1, 50);
    CHECK(one.passed());
    CHECK(one.find("g.non-increasing")->note.find("constant") != std::string::npos);
    const ProofReport five = verify_proposition_proof(5, 100);
    CHECK(five.passed());
    CHECK(five.find("g.non-increasing")->note.find("strictly") != std::string::npos);
    const ProofReport ten = verify_proposition_proof(10, 100);
    CHECK(ten.passed());
    CHECK(std::get<BigRational>(ten.find("g.at-c.lo")->witnesses[0].value) > R("0.869"));
    CHECK_THROWS_AS(verify_proposition_proof(5, 2), PreconditionError);
  }
}

TEST_SUITE("appendix") {
  TEST_CASE("berry-esseen epsilon") {
    const BerryEsseenEval e4 = berry_esseen_epsilon(4, R("1/2"), 64);
    CHECK(e4.ratio == numeric::Enclosure(BigRational(1)));
    CHECK(e4.rho == R("1/8"));
    CHECK(e4.sigma_sq == R("1/4"));
    CHECK(e4.epsilon.contains(R(frozen::kEpsStar4)));
    CHECK(e4.epsilon.lo() > R("0.239"));
    CHECK(e4.epsilon.hi() < R("0.240"));

    for (std::int64_t n : {5, 17, 89}) {
      for (const char* p : {"1/7", "2/5", "13/100"}) {
        CHECK(berry_esseen_epsilon(n, R(p)).epsilon == berry_esseen_epsilon(n, BigRational(1) - R(p)).epsilon);
      }
    }
    CHECK(near(berry_esseen_epsilon(89, R("2/89"), 200).epsilon, frozen::kEpsStar89, 18));
    CHECK(near(epsilon_star(90).at(200), frozen::kEpsStar90, 18));
    CHECK(near(epsilon_star_dominating(600).at(128), frozen::kDominating600, 9));
    CHECK_THROWS_AS(berry_esseen_epsilon(4, R("0")), DomainError);
    CHECK_THROWS_AS(berry_esseen_epsilon(4, R("1")), DomainError);
  }

  TEST_CASE("epsilon against the MPFR oracle") {
    for (std::int64_t n : {4, 30, 89, 90, 600}) {
      const BigRational p(BigInt(2), BigInt(n));
      const BigRational q = BigRational(1) - p;
      const BigRational ratio = (p * p + q * q) / oracle::sqrt(p * q);
      const BigRational eps = proof::kBerryEsseenC3 / oracle::sqrt(BigRational(n)) * (ratio + proof::kBerryEsseenC2);
      CHECK(abs(epsilon_star(n).at(128).midpoint() - eps) < BigRational(10).pow(-30));
    }
  }

  TEST_CASE("closed forms") {
    CHECK(f3(3) == R("7/27"));
    CHECK(f3(4) == R("67/256"));
    CHECK(f1_tilde(3) == R("7/27"));
    CHECK(f1_tilde(4) == R("5/16"));
    CHECK(f1(R("1/3"), 3) == R("7/27"));
    CHECK(numeric::compare_certified(f1_tilde_log_derivative(10), numeric::Relation::Greater, BigRational(0)).value);
    CHECK(f1_tilde_log_derivative(10).at(64).overlaps(numeric::ln_enclosure(R("4/5"), 64) +
                                                      numeric::Enclosure(R("52/224"))));
  }

  TEST_CASE("case classification") {
    CHECK(classify_case(BinomialSpec(10, R("1/2"))).case_id == 1);
    const AppendixCase two = classify_case(BinomialSpec(2, R("1/2")));
    CHECK(two.case_id == 5);
    CHECK(two.verdict.value);
    CHECK(two.verdict.witness->lo().is_zero());
    CHECK(classify_case(BinomialSpec(3, R("1/2"))).case_id == 3);
    CHECK(classify_case(BinomialSpec(10, R("1/20"))).case_id == 2);
    CHECK(classify_case(BinomialSpec(10, R("17/20"))).case_id == 4);
    CHECK(applicable_cases(BinomialSpec(3, R("1/2"))) == std::vector<int>{3, 4});
    CHECK(cases_cover(BinomialSpec(1, R("1/2"))));
    CHECK_THROWS_AS(classify_case(BinomialSpec(10, R("1/100"))), PreconditionError);
    for (std::int64_t n = 1; n <= 12; ++n) {
      for (std::int64_t k = 1; k < 60; ++k) {
        const BinomialSpec spec(n, BigRational(BigInt(k), BigInt(60)));
        if (!bounds::theorem_hypothesis(spec).value) continue;
        const AppendixCase c = classify_case(spec);
        CAPTURE(n);
        CAPTURE(k);
        CHECK(c.case_id >= 1);
        CHECK(c.verdict.value);
        CHECK(verify_main_proof(spec).passed());
      }
    }
  }

  TEST_CASE("case 1 at the full scan") {
    const ProofReport r = verify_case1(600, 90, 200);
    CHECK(r.passed());
    CHECK(verdict_of(r, "case1.argmax") == StepVerdict::True);
    const ProofStep* argmax = r.find("case1.argmax");
    CHECK(std::get<BigRational>(argmax->witnesses[0].value) == BigRational(90));
    const auto& e4 = std::get<numeric::Enclosure>(r.find("case1.eps-star.n=4")->witnesses[0].value);
    CHECK(e4.lo() > R("0.239"));
    CHECK(e4.hi() < R("0.240"));
  }

  TEST_CASE("case 1 with a short scan fails the dominating-bound step") {
    const ProofReport r = verify_case1(frozen::kFirstDominatingBelowThreshold - 1, 90, 64);
    CHECK(r.has_failure());
    CHECK(verdict_of(r, "case1.dominating-below-threshold.n=437") == StepVerdict::False);
    CHECK(verify_case1(frozen::kFirstDominatingBelowThreshold, 90, 64).passed());
    CHECK_THROWS_AS(verify_case1(100, 89, 64), PreconditionError);
    CHECK_THROWS_AS(verify_case1(95, 96, 64), PreconditionError);
  }

  TEST_CASE("a wrong tail start breaks the monotonicity pattern") {
    const ProofReport r = verify_case1(200, 95, 64);
    CHECK(r.has_failure());
    CHECK(verdict_of(r, "case1.eps-star-decreasing[95,200]") == StepVerdict::True);
    CHECK(verdict_of(r, "case1.eps-star-increasing[7,94]") == StepVerdict::False);
  }

  TEST_CASE("cases 2 to 5") {
    const ProofReport c2 = verify_case2(40, 200);
    CHECK(c2.passed());
    const ProofReport c3 = verify_case3(100);
    CHECK(c3.passed());
    for (const char* id : {"case3.second-derivative.n=3", "case3.second-derivative.n=10", "case3.second-derivative.n=50"}) {
      CHECK(verdict_of(c3, id) == StepVerdict::True);
    }
    const ProofReport c4 = verify_case4(100);
    CHECK(c4.passed());
    CHECK(verdict_of(c4, "case4.derivative-formula.n=50") == StepVerdict::True);
    CHECK(verdict_of(c4, "case4.log-derivative-identity.n=50") == StepVerdict::True);
    const ProofReport c5 = verify_case5(100);
    CHECK(c5.passed());
    CHECK_THROWS_AS(verify_case3(2), PreconditionError);
    CHECK_THROWS_AS(verify_case5(1), PreconditionError);
  }
}
