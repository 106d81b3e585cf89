#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "wsa/bounds.hpp"
#include "wsa/exact.hpp"

namespace wsa {

/// A real input snapped to a 113-bit binary value, held exactly as the
/// unevaluated sum hi + lo of two long doubles.
struct SnappedReal {
  long double hi = 0.0L;
  long double lo = 0.0L;

  long double value() const { return hi + lo; }
  double as_double() const { return static_cast<double>(hi + lo); }
  Rational exact() const;
};

inline constexpr mpfr_prec_t kSnapBits = 113;

SnappedReal snap(const MpReal& value);
SnappedReal snap(double value);

/// Parses and snaps "0.5", "3/7", "sqrt(2)-1", "1-sqrt(3)/2", "2*sqrt(5)".
/// Terms are numbers, sqrt(number) or products/quotients of those,
/// combined with + and -.
SnappedReal snap_expression(std::string_view text);

std::vector<SnappedReal> snap_all(std::span<const double> values);
std::vector<double> as_doubles(std::span<const SnappedReal> values);

}  // namespace wsa
