#pragma once

// Exact integer and rational helpers shared by the kernels.
//
// The hot loops work in checked __int128; anything that can overflow that
// width raises CapExceeded. GMP rationals back the slow exact paths.

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wsa {

using Rational = mpq_class;
using Integer = mpz_class;
using i128 = __int128;

i128 checked_mul(i128 a, i128 b);
i128 checked_add(i128 a, i128 b);
i128 checked_pow(i128 base, int exponent);

/// floor(a / b) for b > 0.
inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

Integer to_integer(i128 v);
i128 to_i128(const Integer& v);
std::string to_string(i128 v);

/// Exact rational value of a binary floating-point number.
Rational to_rational(long double v);
inline Rational to_rational(double v) { return Rational(v); }

/// Parses "7", "-3/4", "0.125", "1e-3", "-2.5e2" exactly.
Rational parse_rational(std::string_view text);

/// Closest double to an exact rational (round to nearest).
double to_double(const Rational& r);

/// Smallest double >= r.
double to_double_up(const Rational& r);

}  // namespace wsa
