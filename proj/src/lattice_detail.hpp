#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wsa/bounds.hpp"
#include "wsa/error.hpp"
#include "wsa/polynomial.hpp"

namespace wsa::detail {

/// q^{-tau_j}, or q^{-tau_j}/2 when halved.
inline PowerBound dependent_bound(double tau_j, std::uint64_t q, bool halved) {
  PowerBound b;
  b.two_num = halved ? -1 : 0;
  b.two_den = 1;
  b.base = q;
  b.constant = 0;
  b.tau_sign = -1;
  b.taus = {tau_j};
  b.divisor = 1;
  return b;
}

/// Integers c with |q f(p/q) - c| < bound, ascending. The bound is at most 1,
/// so only floor(q f) and floor(q f) + 1 can qualify.
inline void dependent_candidates(const LatticeEvaluator& f, std::span<const std::int64_t> p,
                                 std::int64_t q, long double bound_approx,
                                 const PowerBound& bound, std::vector<std::int64_t>& out) {
  out.clear();
  const ScaledValue v = f.scaled(p, q);
  const i128 base = floor_div(v.num, v.den);
  for (i128 c = base; c <= base + 1; ++c) {
    i128 r = checked_add(v.num, -checked_mul(c, v.den));
    if (r < 0) r = -r;
    const long double approx = static_cast<long double>(r) / static_cast<long double>(v.den);
    const bool ok = strictly_below(
        approx, [&] { return Rational(to_integer(r), to_integer(v.den)); }, bound_approx, bound);
    if (ok) {
      if (c > INT64_MAX || c < INT64_MIN) throw CapExceeded("dependent numerator exceeds 64 bits");
      out.push_back(static_cast<std::int64_t>(c));
    }
  }
}

}  // namespace wsa::detail
