#include "wsa/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <mpfr.h>

#include "wsa/error.hpp"

namespace wsa {

i128 checked_mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw CapExceeded("128-bit integer overflow in exact evaluation");
  }
  return out;
}

i128 checked_add(i128 a, i128 b) {
  i128 out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw CapExceeded("128-bit integer overflow in exact evaluation");
  }
  return out;
}

i128 checked_pow(i128 base, int exponent) {
  i128 out = 1;
  for (int k = 0; k < exponent; ++k) out = checked_mul(out, base);
  return out;
}

Integer to_integer(i128 v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v)
                                   : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  Integer out = (hi << 64) + lo;
  return negative ? Integer(-out) : out;
}

i128 to_i128(const Integer& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 126) {
    throw CapExceeded("integer does not fit in 128 bits");
  }
  Integer mag = abs(v);
  Integer lo_part = mag & Integer("18446744073709551615");
  Integer hi_part = mag >> 64;
  unsigned __int128 out =
      (static_cast<unsigned __int128>(hi_part.get_ui()) << 64) |
      static_cast<unsigned __int128>(lo_part.get_ui());
  return sgn(v) < 0 ? -static_cast<i128>(out) : static_cast<i128>(out);
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v)
                                   : static_cast<unsigned __int128>(v);
  std::string digits;
  while (mag > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Rational to_rational(long double v) {
  if (!std::isfinite(v)) throw ParseError("non-finite value has no exact rational form");
  if (v == 0.0L) return Rational(0);
  int exponent = 0;
  const long double frac = std::frexp(std::fabs(v), &exponent);
  const auto mantissa =
      static_cast<unsigned long long>(std::ldexp(frac, 64));
  Integer mant(static_cast<unsigned long>(mantissa >> 32));
  mant <<= 32;
  mant += static_cast<unsigned long>(mantissa & 0xffffffffULL);
  Rational out(mant);
  const int shift = exponent - 64;
  if (shift >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(shift));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(-shift));
  }
  out.canonicalize();
  return v < 0 ? Rational(-out) : out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (s.empty()) throw ParseError("empty number in '" + std::string(whole) + "'");
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  Integer digits(0);
  long scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("not a number: '" + std::string(whole) + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') {
      throw ParseError("not a number: '" + std::string(whole) + "'");
    }
    ++i;
    bool exp_negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      exp_negative = s[i] == '-';
      ++i;
    }
    long exp = 0;
    bool exp_digit = false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw ParseError("not a number: '" + std::string(whole) + "'");
      }
      exp = exp * 10 + (s[i] - '0');
      exp_digit = true;
      if (exp > 100000) throw ParseError("exponent out of range: '" + std::string(whole) + "'");
    }
    if (!exp_digit) throw ParseError("not a number: '" + std::string(whole) + "'");
    scale += exp_negative ? -exp : exp;
  }
  Rational out(digits);
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale >= 0) {
    out *= ten_pow;
  } else {
    out /= ten_pow;
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

double round_to_double(const Rational& r, mpfr_rnd_t mode) {
  mpfr_t tmp;
  mpfr_init2(tmp, 53);
  mpfr_set_q(tmp, r.get_mpq_t(), mode);
  const double out = mpfr_get_d(tmp, mode);
  mpfr_clear(tmp);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s, text);
  const Rational num = parse_decimal(s.substr(0, slash), text);
  const Rational den = parse_decimal(s.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational out = num / den;
  out.canonicalize();
  return out;
}

double to_double(const Rational& r) { return round_to_double(r, MPFR_RNDN); }

double to_double_up(const Rational& r) { return round_to_double(r, MPFR_RNDU); }

}  // namespace wsa
