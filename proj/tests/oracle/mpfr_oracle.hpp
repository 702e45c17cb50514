#pragma once

// Independent 200-bit evaluations through MPFR, used only by tests.

#include <gmp.h>
#include <mpfr.h>

#include <string>

#include "binexceed/numeric/rational.hpp"

namespace oracle {

using binexceed::numeric::BigRational;

inline constexpr mpfr_prec_t kBits = 200;

enum class Fn { Ln, Exp, Sqrt };

// f(x) rounded to nearest at kBits, returned as an exact rational.
inline BigRational eval(Fn fn, const BigRational& x) {
  mpfr_t v;
  mpfr_init2(v, kBits);
  mpfr_set_q(v, x.raw().get_mpq_t(), MPFR_RNDN);
  switch (fn) {
    case Fn::Ln: mpfr_log(v, v, MPFR_RNDN); break;
    case Fn::Exp: mpfr_exp(v, v, MPFR_RNDN); break;
    case Fn::Sqrt: mpfr_sqrt(v, v, MPFR_RNDN); break;
  }
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v);
  mpfr_clear(v);
  return BigRational(q);
}

inline BigRational ln(const BigRational& x) { return eval(Fn::Ln, x); }
inline BigRational exp(const BigRational& x) { return eval(Fn::Exp, x); }
inline BigRational sqrt(const BigRational& x) { return eval(Fn::Sqrt, x); }

// ln(4/3) at kBits.
inline BigRational c() { return ln(BigRational(BigRational::parse("4/3"))); }

}  // namespace oracle
