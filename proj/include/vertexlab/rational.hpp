#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace vertexlab {

/// Exact rational scalar used for every coefficient in the library.
using Rational = mpq_class;

/// Rational vector, e.g. a class in A (x) Q written in a chosen basis.
using QVec = std::vector<Rational>;

/// Serialize as "p/q" (the denominator is always printed).
std::string to_string(const Rational& q);

/// Parse "p", "p/q" or "-p/q"; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// n! as a rational.
Rational factorial(long long n);

/// Generalized binomial coefficient C(n, k) for any integer n and k >= 0.
Rational binomial(long long n, long long k);

/// Rational from a 64-bit integer (gmpxx has no long long constructor).
inline Rational rat(long long x) { return Rational(static_cast<long>(x)); }

/// (-1)^e for any integer e.
inline int sign_power(long long e) { return (e % 2 == 0) ? 1 : -1; }

} // namespace vertexlab
