#include "wsa/bounds.hpp"

#include <cmath>

namespace wsa {

MpReal::MpReal(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

MpReal::MpReal(const MpReal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

MpReal& MpReal::operator=(const MpReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

MpReal::~MpReal() { mpfr_clear(value_); }

long double PowerBound::exponent_approx() const {
  long double sum = 0.0L;
  for (double t : taus) sum += static_cast<long double>(t);
  return (static_cast<long double>(constant) + tau_sign * sum) /
         static_cast<long double>(divisor);
}

long double PowerBound::approx() const {
  const long double two = std::exp2(static_cast<long double>(two_num) /
                                    static_cast<long double>(two_den));
  return two * std::pow(static_cast<long double>(base), exponent_approx());
}

void PowerBound::exact(MpReal& out) const {
  const mpfr_prec_t prec = out.precision();
  MpReal expo(prec), tmp(prec), two_part(prec);
  mpfr_set_si(expo.get(), 0, MPFR_RNDN);
  for (double t : taus) mpfr_add_d(expo.get(), expo.get(), t, MPFR_RNDN);
  if (tau_sign < 0) mpfr_neg(expo.get(), expo.get(), MPFR_RNDN);
  mpfr_add_si(expo.get(), expo.get(), constant, MPFR_RNDN);
  mpfr_div_si(expo.get(), expo.get(), divisor, MPFR_RNDN);

  mpfr_set_si(two_part.get(), two_num, MPFR_RNDN);
  mpfr_div_si(two_part.get(), two_part.get(), two_den, MPFR_RNDN);
  mpfr_exp2(two_part.get(), two_part.get(), MPFR_RNDN);

  mpfr_set_ui(tmp.get(), 0, MPFR_RNDN);
  mpfr_set_uj(tmp.get(), base, MPFR_RNDN);
  mpfr_pow(out.get(), tmp.get(), expo.get(), MPFR_RNDN);
  mpfr_mul(out.get(), out.get(), two_part.get(), MPFR_RNDN);
}

bool strictly_below_exact(const Rational& lhs, const PowerBound& bound) {
  MpReal rhs;
  bound.exact(rhs);
  MpReal left;
  mpfr_set_q(left.get(), lhs.get_mpq_t(), MPFR_RNDN);
  // Both sides carry a few ulps of 256-bit rounding; anything that close is
  // a tie and a tie is not strictly below.
  MpReal diff;
  mpfr_sub(diff.get(), rhs.get(), left.get(), MPFR_RNDN);
  if (mpfr_sgn(diff.get()) <= 0) return false;
  MpReal scale;
  mpfr_abs(scale.get(), rhs.get(), MPFR_RNDN);
  mpfr_mul_2si(scale.get(), scale.get(), -240, MPFR_RNDN);
  return mpfr_cmp(diff.get(), scale.get()) > 0;
}

}  // namespace wsa
