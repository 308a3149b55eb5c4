#pragma once

#include <gmpxx.h>
#include <string>

namespace k3 {

// Exact arbitrary-precision rational, canonical form (positive denominator,
// coprime numerator/denominator) maintained by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(const std::string& s);

// "n" for integers, "p/q" otherwise.
std::string format_rational(const Rational& q);

inline int sign_of(const Rational& q) { return sgn(q); }

double to_double(const Rational& q);

} // namespace k3
