#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "diophlab/errors.hpp"

namespace diophlab {

// Exact arithmetic backbone. cpp_rational keeps gcd(num, den) = 1 and
// den >= 1 as a class invariant, which is exactly the contract we need.
using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }
inline Rational abs_rat(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Integer pow_int(const Integer& base, unsigned long e);
Rational pow_rat(const Rational& base, long e);

// Floor of p/q for exact integers (rounds toward -infinity).
Integer floor_div(const Integer& p, const Integer& q);

// Nearest integer to r; exact half-integers round toward zero.
Integer round_half_toward_zero(const Rational& r);

// Compares lhs against base^expo exactly (all arguments positive,
// expo an arbitrary rational). Returns -1, 0, +1.
int cmp_pow(const Rational& lhs, const Rational& base, const Rational& expo);

// Text format "p/q", or "p" when q = 1.
std::string rat_to_string(const Rational& r);
Rational rat_from_string(const std::string& text);

// Decimal expansion with `digits` fractional digits, rounded to nearest
// (ties away from zero). Deterministic across platforms.
std::string rat_to_decimal(const Rational& r, unsigned digits);

// Truncated decimal expansion of the positive real b-th root of pow_b.
std::string root_decimal(const Rational& pow_b, unsigned b, unsigned digits);

// Euclidean norm squared of a rational vector.
Rational norm_sq(const RatVector& v);
Rational norm_sq_int(const IntVector& v);

Integer lcm_int(const Integer& a, const Integer& b);
Integer gcd_int(const Integer& a, const Integer& b);

} // namespace diophlab
