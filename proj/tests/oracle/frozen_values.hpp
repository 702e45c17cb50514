#pragma once

// Reference values computed once with mpmath (60 digits) and sympy, frozen here.

namespace frozen {

inline constexpr const char* kC = "0.287682072451780927439219005993827431503509710897761056506666";
inline constexpr const char* kB = "0.869014874195551727594124850411441592187048876293391437098198";
inline constexpr const char* kE = "2.718281828459045235360287471352662497757247093699959574966968";
inline constexpr const char* kSqrt2 = "1.414213562373095048801688724209698078569671875376948073176680";

inline constexpr const char* kEpsStar4 = "0.239193165";
inline constexpr const char* kEpsStar89 = "0.2441280769973426957";
inline constexpr const char* kEpsStar90 = "0.2441282421518063354";
inline constexpr const char* kDominating600 = "0.2429767685";
inline constexpr long kFirstDominatingBelowThreshold = 438;

inline constexpr const char* kOneMinusExpMinus028 = "0.2442162585";
inline constexpr const char* kOneMinusExpMinusHalfC = "0.1339745962";

}  // namespace frozen
