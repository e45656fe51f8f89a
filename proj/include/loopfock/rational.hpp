#pragma once

#include <gmpxx.h>

#include <string>

namespace loopfock {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p/q" or "p"; the result is canonicalized.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline double to_double(const Rational& q) { return q.get_d(); }

// Exact integer power, negative exponents allowed for nonzero q.
Rational pow_rational(const Rational& q, long e);

}  // namespace loopfock
