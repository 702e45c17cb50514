#include "binexceed/numeric/certified.hpp"

#include <algorithm>
#include <utility>

#include "binexceed/errors.hpp"

namespace binexceed::numeric {

namespace {

// Slack for composite expressions: operands are evaluated a few bits finer.
constexpr int kCompositeGuard = 4;

int composite_bits(int bits) { return std::min(bits + kCompositeGuard, kMaxPrecisionBits); }

std::optional<bool> decide(const Enclosure& a, Relation rel, const Enclosure& b) {
  switch (rel) {
    case Relation::Less:
      if (a.hi() < b.lo()) return true;
      if (a.lo() >= b.hi()) return false;
      break;
    case Relation::LessEqual:
      if (a.hi() <= b.lo()) return true;
      if (a.lo() > b.hi()) return false;
      break;
    case Relation::Greater:
      if (a.lo() > b.hi()) return true;
      if (a.hi() <= b.lo()) return false;
      break;
    case Relation::GreaterEqual:
      if (a.lo() >= b.hi()) return true;
      if (a.hi() < b.lo()) return false;
      break;
    case Relation::Equal:
      if (a.is_exact() && b.is_exact() && a.lo() == b.lo()) return true;
      if (a.hi() < b.lo() || b.hi() < a.lo()) return false;
      break;
  }
  return std::nullopt;
}

}  // namespace

CertifiedReal::CertifiedReal(const BigRational& exact) : exact_(exact) {}

CertifiedReal::CertifiedReal(const Enclosure& fixed) {
  if (fixed.is_exact()) {
    exact_ = fixed.lo();
  } else {
    fixed_ = fixed;
  }
}

CertifiedReal::CertifiedReal(Generator generator) : generator_(std::move(generator)) {}

Enclosure CertifiedReal::at(int precision_bits) const {
  if (exact_) return Enclosure(*exact_);
  if (fixed_) return *fixed_;
  return generator_(precision_bits);
}

CertifiedReal CertifiedReal::c() {
  return CertifiedReal(Generator([](int bits) { return c_enclosure(bits); }));
}

CertifiedReal CertifiedReal::b() {
  return CertifiedReal(Generator([](int bits) { return b_enclosure(bits); }));
}

CertifiedReal CertifiedReal::ln(const BigRational& x) {
  if (x == BigRational(1)) return CertifiedReal(BigRational(0));
  return CertifiedReal(Generator([x](int bits) { return ln_enclosure(x, bits); }));
}

CertifiedReal CertifiedReal::exp(const BigRational& x) {
  if (x.is_zero()) return CertifiedReal(BigRational(1));
  return CertifiedReal(Generator([x](int bits) { return exp_enclosure(x, bits); }));
}

CertifiedReal CertifiedReal::sqrt(const BigRational& x) {
  const Enclosure probe = sqrt_enclosure(x, kMinPrecisionBits);
  if (probe.is_exact()) return CertifiedReal(probe.lo());
  return CertifiedReal(Generator([x](int bits) { return sqrt_enclosure(x, bits); }));
}

namespace {

template <typename Op>
CertifiedReal combine(const CertifiedReal& a, const CertifiedReal& b, Op op) {
  if (a.exact() && b.exact()) return CertifiedReal(op(Enclosure(*a.exact()), Enclosure(*b.exact())).lo());
  return CertifiedReal(CertifiedReal::Generator([a, b, op](int bits) {
    const int inner = composite_bits(bits);
    return op(a.at(inner), b.at(inner));
  }));
}

}  // namespace

CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
  return combine(a, b, [](const Enclosure& x, const Enclosure& y) { return x + y; });
}

CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
  return combine(a, b, [](const Enclosure& x, const Enclosure& y) { return x - y; });
}

CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
  return combine(a, b, [](const Enclosure& x, const Enclosure& y) { return x * y; });
}

CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
  return combine(a, b, [](const Enclosure& x, const Enclosure& y) { return x / y; });
}

CertifiedReal operator-(const CertifiedReal& a) {
  if (a.exact()) return CertifiedReal(-*a.exact());
  return CertifiedReal(CertifiedReal::Generator([a](int bits) { return -a.at(bits); }));
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::Greater: return ">";
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
  }
  return "?";
}

Verdict compare_certified(const CertifiedReal& a, Relation rel, const CertifiedReal& b,
                          int max_precision_bits) {
  if (max_precision_bits < kMinPrecisionBits || max_precision_bits > kMaxPrecisionBits) {
    throw PreconditionError("max_precision_bits out of range: " + std::to_string(max_precision_bits));
  }
  if (a.exact() && b.exact()) {
    const BigRational& x = *a.exact();
    const BigRational& y = *b.exact();
    bool value = false;
    switch (rel) {
      case Relation::Less: value = x < y; break;
      case Relation::LessEqual: value = x <= y; break;
      case Relation::Greater: value = x > y; break;
      case Relation::GreaterEqual: value = x >= y; break;
      case Relation::Equal: value = x == y; break;
    }
    return Verdict{value, Enclosure(x - y), 0, {}};
  }

  const bool refinable = a.refinable() || b.refinable();
  int bits = std::min(kDefaultPrecisionBits, max_precision_bits);
  for (;;) {
    const Enclosure ea = a.at(bits);
    const Enclosure eb = b.at(bits);
    if (const auto value = decide(ea, rel, eb)) return Verdict{*value, ea - eb, bits, {}};
    if (!refinable || bits >= max_precision_bits) {
      throw UndecidedError("comparison " + to_string(rel) + " undecided at " + std::to_string(bits) +
                               " bits: [" + ea.lo().to_decimal(24) + ", " + ea.hi().to_decimal(24) +
                               "] vs [" + eb.lo().to_decimal(24) + ", " + eb.hi().to_decimal(24) + "]",
                           bits);
    }
    bits = std::min(bits * 2, max_precision_bits);
  }
}

}  // namespace binexceed::numeric
