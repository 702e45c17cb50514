#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "binexceed/bounds/bounds.hpp"
#include "binexceed/cli/cli.hpp"
#include "binexceed/proof/appendix.hpp"
#include "binexceed/proof/main_proof.hpp"

namespace py = pybind11;
using namespace binexceed;
using numeric::BigRational;
using numeric::Enclosure;

namespace {

// Rationals cross the boundary as "a/b" strings.
BigRational rat(const std::string& s) { return BigRational::parse(s); }

py::tuple enclosure_tuple(const Enclosure& e) { return py::make_tuple(e.lo().fraction_str(), e.hi().fraction_str()); }

binom::BinomialSpec spec(std::int64_t n, const std::string& p) { return binom::BinomialSpec(n, rat(p)); }

py::dict verdict_dict(const numeric::Verdict& v) {
  py::dict d;
  d["value"] = v.value;
  d["precision_bits"] = v.precision_bits;
  d["detail"] = v.detail;
  if (v.witness) d["witness"] = enclosure_tuple(*v.witness);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact binomial exceedance probabilities and certified checks of the 1/4 bound";

  m.def("c_enclosure", [](int bits) { return enclosure_tuple(numeric::c_enclosure(bits)); }, py::arg("bits") = 64);
  m.def("b_enclosure", [](int bits) { return enclosure_tuple(numeric::b_enclosure(bits)); }, py::arg("bits") = 64);
  m.def("ln_enclosure", [](const std::string& x, int bits) { return enclosure_tuple(numeric::ln_enclosure(rat(x), bits)); },
        py::arg("x"), py::arg("bits") = 64);
  m.def("exp_enclosure", [](const std::string& x, int bits) { return enclosure_tuple(numeric::exp_enclosure(rat(x), bits)); },
        py::arg("x"), py::arg("bits") = 64);
  m.def("sqrt_enclosure",
        [](const std::string& x, int bits) { return enclosure_tuple(numeric::sqrt_enclosure(rat(x), bits)); },
        py::arg("x"), py::arg("bits") = 64);

  m.def("pmf", [](std::int64_t n, const std::string& p, std::int64_t k) { return binom::pmf(spec(n, p), k).str(); });
  m.def("survival",
        [](std::int64_t n, const std::string& p, std::int64_t k) { return binom::survival(spec(n, p), k).str(); });
  m.def("tail_gt_mean", [](std::int64_t n, const std::string& p) {
    const binom::ExceedanceRecord r = binom::tail_gt_mean(spec(n, p));
    py::dict d;
    d["mean"] = r.mean.str();
    d["m"] = r.m;
    d["tail"] = r.tail.str();
    return d;
  });

  m.def("check_theorem", [](std::int64_t n, const std::string& p, int bits) {
    const bounds::TheoremVerdict v = bounds::check_theorem(spec(n, p), bits);
    py::dict d;
    d["hypothesis_holds"] = v.hypothesis_holds.value;
    d["bound_holds"] = v.bound_holds.value;
    d["strict"] = v.strict.value;
    d["is_equality_case"] = v.is_equality_case;
    d["tail"] = v.tail.str();
    return d;
  }, py::arg("n"), py::arg("p"), py::arg("bits") = numeric::kMaxPrecisionBits);
  m.def("check_proposition",
        [](std::int64_t n, const std::string& p, int bits) { return verdict_dict(bounds::check_proposition(spec(n, p), bits)); },
        py::arg("n"), py::arg("p"), py::arg("bits") = numeric::kMaxPrecisionBits);
  m.def("optimality_search", [](const std::string& c1, std::int64_t n_max) {
    const bounds::OptimalityWitness w = bounds::optimality_search(rat(c1), n_max);
    py::dict d;
    d["c1"] = w.c1.str();
    d["n"] = w.n ? py::object(py::int_(*w.n)) : py::object(py::none());
    d["p"] = w.p ? py::object(py::str(w.p->str())) : py::object(py::none());
    d["tail"] = w.tail ? py::object(py::str(w.tail->str())) : py::object(py::none());
    d["limit_enclosure"] = enclosure_tuple(w.limit_enclosure);
    return d;
  });

  m.def("classify_case", [](std::int64_t n, const std::string& p) {
    const proof::AppendixCase c = proof::classify_case(spec(n, p));
    py::dict d;
    d["case_id"] = c.case_id;
    d["condition"] = c.condition;
    d["verdict"] = c.verdict.value;
    return d;
  });
  m.def("berry_esseen_epsilon", [](std::int64_t n, const std::string& p, int bits) {
    return enclosure_tuple(proof::berry_esseen_epsilon(n, rat(p), bits).epsilon);
  }, py::arg("n"), py::arg("p"), py::arg("bits") = 64);

  m.def("verify_main_proof",
        [](std::int64_t n, const std::string& p) { return proof::verify_main_proof(spec(n, p)).to_json(2); });
  m.def("anderson_samuels_sweep",
        [](std::int64_t m_max, std::int64_t n_max) { return proof::anderson_samuels_sweep(m_max, n_max).to_json(2); });
  m.def("verify_case3", [](std::int64_t n_max) { return proof::verify_case3(n_max).to_json(2); });
  m.def("verify_case5", [](std::int64_t n_max) { return proof::verify_case5(n_max).to_json(2); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"binexceed"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, "Run the command line in-process; returns (exit_code, stdout, stderr).");
}
