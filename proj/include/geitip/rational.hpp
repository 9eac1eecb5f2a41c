#pragma once

#include <gmpxx.h>

#include <string>

namespace geitip {

// Exact arbitrary-precision rational. All arithmetic in the prover is exact;
// floating point never enters any proof path.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Accepts "3", "-2", "1/2", "-7/3".
Rational parse_rational(const std::string& text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);

}  // namespace geitip
