#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace phaseless {

using Rat = mpq_class;
using Int = mpz_class;

// Parses "p/q", integer, or decimal literals ("3", "-7/2", "0.125") exactly.
Rat parse_rational(const std::string& text);

// Canonical text form: "p" or "p/q" with q > 1.
std::string format_rational(const Rat& value);

double to_double(const Rat& value);

// Nearest rational within `tol` of x, by continued fraction expansion.
// Terminating decimals and small fractions are recovered exactly.
Rat rationalize(double x, double tol = 1e-12);

// Smallest integer s with s*s >= r (r >= 0).
long ceil_isqrt(const Int& r);

// Smallest integer s with s*(s+1)/2 >= r (r >= 0).
long ceil_triangular_inverse(const Int& r);

inline Rat abs_rat(const Rat& v) { return v < 0 ? Rat(-v) : v; }

std::vector<Rat> rationalize_all(const std::vector<double>& xs, double tol = 1e-12);

} // namespace phaseless
