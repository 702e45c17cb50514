#pragma once

#include "binexceed/numeric/enclosure.hpp"

namespace binexceed::numeric {

inline constexpr int kDefaultPrecisionBits = 64;
inline constexpr int kMinPrecisionBits = 8;
inline constexpr int kMaxPrecisionBits = 4096;

// Every constructor below takes precision_bits in [kMinPrecisionBits,
// kMaxPrecisionBits] and throws PreconditionError otherwise. Widths are
// non-increasing in precision_bits.

/// ln(x) for x > 0, via argument reduction by powers of two and the atanh
/// series. Width <= 2^-bits * max(1, |ln x| + 1).
Enclosure ln_enclosure(const BigRational& x, int precision_bits);

/// e^x via halving, Taylor series and repeated squaring.
/// Width <= 2^-bits * max(1, e^x).
Enclosure exp_enclosure(const BigRational& x, int precision_bits);

/// sqrt(x) for x >= 0. Exact when x is the square of a rational.
Enclosure sqrt_enclosure(const BigRational& x, int precision_bits);

// Monotone extensions to interval arguments.
Enclosure ln_enclosure(const Enclosure& x, int precision_bits);
Enclosure exp_enclosure(const Enclosure& x, int precision_bits);
Enclosure sqrt_enclosure(const Enclosure& x, int precision_bits);

/// c = ln(4/3), the threshold constant of the 1/4 bound.
Enclosure c_enclosure(int precision_bits);

/// b = (1 - e^-c)/c = (1/4)/c.
Enclosure b_enclosure(int precision_bits);

}  // namespace binexceed::numeric
