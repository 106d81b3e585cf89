#pragma once

// Strict comparisons "exact rational < real bound" with a guard band.
//
// Every inequality in the Dirichlet search and in the N(f,tau) membership
// test has an exact rational left side and a right side of the form
// 2^{s} * base^{e}, with s rational and e built from the user's exponents.
// The fast path compares in long double; when the two sides agree to within
// a relative 1e-12 the comparison is redone with 256-bit MPFR.

#include <cstdint>
#include <utility>
#include <vector>

#include <mpfr.h>

#include "wsa/exact.hpp"

namespace wsa {

/// RAII handle for an MPFR number at a fixed precision.
class MpReal {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 256;

  explicit MpReal(mpfr_prec_t precision = kDefaultPrecision);
  MpReal(const MpReal& other);
  MpReal& operator=(const MpReal& other);
  ~MpReal();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

/// The real number 2^{two_num/two_den} * base^{(constant + sign*sum(taus))/divisor}.
struct PowerBound {
  std::int64_t two_num = 0;
  std::int64_t two_den = 1;
  std::uint64_t base = 1;
  std::int64_t constant = 0;
  int tau_sign = 1;
  std::vector<double> taus;
  std::int64_t divisor = 1;

  long double exponent_approx() const;
  long double approx() const;
  void exact(MpReal& out) const;
};

constexpr long double kGuardBand = 1e-12L;

/// Decides lhs < bound where `approx` is a long-double estimate of lhs and
/// `exact()` returns lhs as an exact Rational. Ties count as "not below".
template <class ExactFn>
bool strictly_below(long double approx, ExactFn&& exact,
                    long double bound_approx, const PowerBound& bound);

bool strictly_below_exact(const Rational& lhs, const PowerBound& bound);

template <class ExactFn>
bool strictly_below(long double approx, ExactFn&& exact,
                    long double bound_approx, const PowerBound& bound) {
  if (approx < bound_approx * (1.0L - kGuardBand)) return true;
  if (approx > bound_approx * (1.0L + kGuardBand)) return false;
  return strictly_below_exact(std::forward<ExactFn>(exact)(), bound);
}

}  // namespace wsa
