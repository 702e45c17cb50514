#pragma once

#include <functional>
#include <optional>
#include <string>

#include "binexceed/numeric/elementary.hpp"

namespace binexceed::numeric {

/// A real number given by a rule producing enclosures at any precision, or an
/// exact rational. Used wherever a comparison may need refinement.
class CertifiedReal {
 public:
  using Generator = std::function<Enclosure(int precision_bits)>;

  CertifiedReal(const BigRational& exact);  // NOLINT
  CertifiedReal(int exact) : CertifiedReal(BigRational(exact)) {}  // NOLINT
  /// A fixed enclosure; it cannot be refined further.
  CertifiedReal(const Enclosure& fixed);  // NOLINT
  explicit CertifiedReal(Generator generator);

  Enclosure at(int precision_bits) const;
  const std::optional<BigRational>& exact() const { return exact_; }
  bool refinable() const { return static_cast<bool>(generator_); }

  static CertifiedReal c();
  static CertifiedReal b();
  static CertifiedReal ln(const BigRational& x);
  static CertifiedReal exp(const BigRational& x);
  static CertifiedReal sqrt(const BigRational& x);

  friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator-(const CertifiedReal& a);

 private:
  std::optional<BigRational> exact_;
  std::optional<Enclosure> fixed_;
  Generator generator_;
};

enum class Relation { Less, LessEqual, Greater, GreaterEqual, Equal };

std::string to_string(Relation r);

/// Outcome of a rigorously decided comparison. The witness encloses a - b at
/// the precision that decided it (degenerate for exact operands).
struct Verdict {
  bool value = false;
  std::optional<Enclosure> witness;
  int precision_bits = 0;
  std::string detail;

  explicit operator bool() const { return value; }
};

/// Decide `a rel b`, refining both sides from 64 bits (or the cap, if lower)
/// by doubling up to max_precision_bits. Throws UndecidedError when the
/// enclosures still overlap at the cap, PreconditionError when the cap is
/// outside [kMinPrecisionBits, kMaxPrecisionBits].
Verdict compare_certified(const CertifiedReal& a, Relation rel, const CertifiedReal& b,
                          int max_precision_bits = kMaxPrecisionBits);

}  // namespace binexceed::numeric
