#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "binexceed/cli/cli.hpp"
#include "binexceed/numeric/rational.hpp"
#include "../support/figure_checks.hpp"

#ifndef BINEXCEED_CLI_PATH
#error "BINEXCEED_CLI_PATH must point at the built command line"
#endif

using binexceed::numeric::BigRational;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_in_process(std::vector<std::string> args) {
  std::vector<const char*> argv{"binexceed"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = binexceed::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary; stderr is discarded.
Outcome run_subprocess(const std::string& args) {
  const std::string cmd = std::string(BINEXCEED_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, {}};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("tail") {
  CHECK(first_line(run_in_process({"tail", "2", "1/2"}).out) == "1/4 (0.250000000000000)");
  CHECK(first_line(run_in_process({"tail", "5", "0"}).out) == "0");
  CHECK(first_line(run_in_process({"tail", "5", "1/5"}).out) == "821/3125 (0.262720000000000)");
  CHECK(first_line(run_in_process({"tail", "5", "0.2"}).out) == "821/3125 (0.262720000000000)");
  const Outcome o = run_in_process({"tail", "2", "1/2"});
  CHECK(o.out.find("mean: 1\n") != std::string::npos);
  CHECK(o.out.find("m: 2\n") != std::string::npos);
  CHECK(run_in_process({"tail", "5", "abc"}).code == 2);
  CHECK(run_in_process({"tail", "5", "3/2"}).code == 2);
  CHECK(run_in_process({"tail", "0", "1/2"}).code == 2);
  CHECK(run_in_process({"tail", "5"}).code == 2);
  CHECK(run_in_process({}).code == 2);
  CHECK(run_in_process({"bogus"}).code == 2);
  CHECK(run_in_process({"--help"}).code == 0);
}

TEST_CASE("printed rationals re-parse to the same value") {
  for (const char* p : {"1/3", "2/7", "0.125", "999/1000"}) {
    for (const char* n : {"3", "17", "40"}) {
      const std::string text = first_line(run_in_process({"tail", n, p}).out);
      const std::string exact = text.substr(0, text.find(' '));
      const BigRational parsed = BigRational::parse(exact);
      CHECK(parsed.str() == exact);
    }
  }
}

TEST_CASE("check") {
  const Outcome eq = run_in_process({"check", "2", "1/2"});
  CHECK(eq.code == 0);
  CHECK(eq.out.find("regime: theorem") != std::string::npos);
  CHECK(eq.out.find("equality case: yes") != std::string::npos);

  const Outcome prop = run_in_process({"check", "10", "1/100"});
  CHECK(prop.code == 0);
  CHECK(prop.out.find("regime: proposition") != std::string::npos);
  CHECK(prop.out.find("holds (max(1, b n) = b n)") != std::string::npos);

  CHECK(run_in_process({"check", "2", "1/10"}).code == 0);
  CHECK(run_in_process({"check", "3", "1"}).code == 1);
  // 3e-8 above c: undecided at 16 bits, decided at 64.
  CHECK(run_in_process({"check", "1", "0.28768210", "--precision-bits", "16"}).code == 3);
  CHECK(run_in_process({"check", "1", "0.28768210"}).code == 0);
  CHECK(run_in_process({"check", "1", "1/2", "--precision-bits", "5000"}).code == 2);
}

TEST_CASE("optimality") {
  const Outcome q = run_in_process({"optimality", "1/4", "--nmax", "100"});
  CHECK(q.code == 0);
  CHECK(q.out.find("witness: n = 2, p = 1/8, P(X > EX) = 15/64") != std::string::npos);
  const Outcome w = run_in_process({"optimality", "28/100", "--nmax", "10000"});
  CHECK(w.code == 0);
  CHECK(w.out.find("0.244216258") != std::string::npos);
  CHECK(run_in_process({"optimality", "1/2"}).code == 2);
  CHECK(run_in_process({"optimality", "0"}).code == 2);
  CHECK(run_in_process({"optimality", "x"}).code == 2);
}

TEST_CASE("verify") {
  const Outcome as = run_in_process({"verify", "anderson-samuels", "--mmax", "5", "--nmax", "20"});
  CHECK(as.code == 0);
  const auto doc = nlohmann::json::parse(as.out);
  CHECK(doc["passed"] == true);
  for (const auto& step : doc["steps"]) {
    CHECK(step.contains("step_id"));
    CHECK(step.contains("paper_anchor"));
    CHECK(step["verdict"] == "TRUE");
    CHECK(step["witnesses"].is_array());
  }
  CHECK(as.err.find("TRUE") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "binexceed_cli_test";
  std::filesystem::create_directories(dir);
  const Outcome to_file =
      run_in_process({"verify", "main", "--nmax", "8", "--grid", "40", "--out", (dir / "main.json").string()});
  CHECK(to_file.code == 0);
  CHECK(nlohmann::json::parse(read_file(dir / "main.json"))["passed"] == true);

  // A dominating-bound scan that stops before n = 438 is an honest failure.
  CHECK(run_in_process({"verify", "appendix", "--nmax", "120", "--grid", "40", "--out", (dir / "a.json").string()})
            .code == 1);
  CHECK(run_in_process({"verify", "main", "--nmax", "5", "--out", "/nonexistent-dir/x.json"}).code == 4);
  CHECK(run_in_process({"verify", "everything"}).code == 2);
  CHECK(run_in_process({"verify", "appendix", "--nmax", "50"}).code == 2);
}

TEST_CASE("figure") {
  const Outcome f = run_in_process({"figure", "5", "--points", "1000"});
  REQUIRE(f.code == 0);
  const std::vector<std::string> rows = lines(f.out);
  REQUIRE(rows.size() == 1000);
  CHECK(rows[0] == "p,tail,segment");
  CHECK(f.out.find('\r') == std::string::npos);
  CHECK(rows[200] == "0.200000000000,0.262720000000,HIGH");
  CHECK(rows[57].substr(0, 15) == "0.057000000000,");
  CHECK(rows[57].substr(rows[57].size() - 4) == ",LOW");
  CHECK(rows[58].substr(rows[58].size() - 4) == ",MID");
  const figure_checks::Sawtooth saw = figure_checks::check_sawtooth(f.out, 5);
  CHECK_MESSAGE(saw.ok, saw.problem);
  CHECK(saw.runs == 5);
  CHECK(figure_checks::check_sawtooth(run_in_process({"figure", "7", "--points", "500"}).out, 7).ok);
  CHECK(run_in_process({"figure", "5", "--points", "9"}).code == 2);
  CHECK(run_in_process({"figure", "--out", "/nonexistent-dir/f.csv"}).code == 4);
  CHECK(run_in_process({"figure"}).out == f.out);
}

TEST_CASE("subprocess exit-code contract") {
  CHECK(run_subprocess("tail 2 1/2").code == 0);
  CHECK(first_line(run_subprocess("tail 2 1/2").out) == "1/4 (0.250000000000000)");
  CHECK(run_subprocess("tail 2 oops").code == 2);
  CHECK(run_subprocess("check 3 1").code == 1);
  CHECK(run_subprocess("check 1 0.28768210 --precision-bits 16").code == 3);
  CHECK(run_subprocess("figure 5 --out /nonexistent-dir/f.csv").code == 4);
  CHECK(run_subprocess("optimality 1/2").code == 2);

  const auto dir = std::filesystem::temp_directory_path() / "binexceed_cli_test";
  std::filesystem::create_directories(dir);
  REQUIRE(run_subprocess("figure 5 --points 1000 --out " + (dir / "a.csv").string()).code == 0);
  REQUIRE(run_subprocess("figure 5 --points 1000 --out " + (dir / "b.csv").string()).code == 0);
  const std::string a = read_file(dir / "a.csv");
  CHECK(!a.empty());
  CHECK(a == read_file(dir / "b.csv"));
}
