#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include <mpfr.h>

namespace wsa::oracle {

namespace {

constexpr mpfr_prec_t kBits = 512;

struct Big {
  mpfr_t v;
  Big() { mpfr_init2(v, kBits); }
  ~Big() { mpfr_clear(v); }
  Big(const Big&) = delete;
  Big& operator=(const Big&) = delete;
};

Rational abs_q(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Integer floor_q(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Integer ceil_q(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

/// Sets out = base^{e} for a rational exponent e given exactly.
void power(Big& out, std::uint64_t base, const Rational& e) {
  Big lb, ee;
  mpfr_set_ui(lb.v, base, MPFR_RNDN);
  mpfr_log(lb.v, lb.v, MPFR_RNDN);
  mpfr_set_q(ee.v, e.get_mpq_t(), MPFR_RNDN);
  mpfr_mul(out.v, lb.v, ee.v, MPFR_RNDN);
  mpfr_exp(out.v, out.v, MPFR_RNDN);
}

/// Strict lhs < rhs, where a relative gap below 2^-480 counts as equality.
bool strictly_less(const Big& lhs, const Big& rhs) {
  if (mpfr_cmp(lhs.v, rhs.v) >= 0) return false;
  Big diff;
  mpfr_sub(diff.v, rhs.v, lhs.v, MPFR_RNDN);
  Big scale;
  mpfr_mul_2si(scale.v, rhs.v, -480, MPFR_RNDN);
  return mpfr_cmp(diff.v, scale.v) > 0;
}

void cartesian(const std::vector<std::vector<std::int64_t>>& choices, std::size_t from,
               std::vector<std::int64_t>& cur, std::vector<std::vector<std::int64_t>>& out) {
  if (from == choices.size()) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t v : choices[from]) {
    cur.push_back(v);
    cartesian(choices, from + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Rational evaluate(const Polynomial& f, const std::vector<Rational>& x) {
  Rational sum = 0;
  for (const auto& t : f.terms()) {
    Rational term = t.coeff;
    for (std::size_t i = 0; i < x.size(); ++i) {
      Rational pw = 1;
      for (int k = 0; k < t.exponents[i]; ++k) pw *= x[i];
      term *= pw;
    }
    sum += term;
  }
  sum.canonicalize();
  return sum;
}

bool independent_ok(const Rational& err, std::size_t d, std::size_t m, double S, std::uint64_t Q) {
  {
    const long double approx = std::pow(static_cast<long double>(err.get_d()), static_cast<long double>(d)) *
                               std::pow(static_cast<long double>(Q), 1.0L - S) /
                               std::pow(4.0L, static_cast<long double>(m));
    if (approx < 1.0L - 1e-6L) return true;
    if (approx > 1.0L + 1e-6L) return false;
  }
  Rational lhs_q = 1;
  for (std::size_t k = 0; k < d; ++k) lhs_q *= err;
  Big lhs, qpow, four;
  mpfr_set_q(lhs.v, lhs_q.get_mpq_t(), MPFR_RNDN);
  power(qpow, Q, Rational(1) - Rational(S));
  mpfr_mul(lhs.v, lhs.v, qpow.v, MPFR_RNDN);
  mpfr_set_ui(four.v, 4, MPFR_RNDN);
  mpfr_pow_ui(four.v, four.v, m, MPFR_RNDN);
  return strictly_less(lhs, four);
}

bool dependent_ok(const Rational& err, double tau, std::uint64_t q, int c) {
  // c * err * q^tau >= err when q >= 1 and tau > 0.
  if (err >= 1) return false;
  {
    const long double approx = c * static_cast<long double>(err.get_d()) *
                               std::pow(static_cast<long double>(q), static_cast<long double>(tau));
    if (approx < 1.0L - 1e-6L) return true;
    if (approx > 1.0L + 1e-6L) return false;
  }
  Big lhs, qpow, one;
  const Rational scaled = Rational(c) * err;
  mpfr_set_q(lhs.v, scaled.get_mpq_t(), MPFR_RNDN);
  power(qpow, q, Rational(tau));
  mpfr_mul(lhs.v, lhs.v, qpow.v, MPFR_RNDN);
  mpfr_set_ui(one.v, 1, MPFR_RNDN);
  return strictly_less(lhs, one);
}

std::vector<RationalPoint> dirichlet_solutions(const MongeManifold& M,
                                               const std::vector<double>& tau_dep,
                                               const std::vector<Rational>& x, std::uint64_t Q) {
  const std::size_t d = M.d();
  const std::size_t m = M.m();
  double S = 0;
  for (double t : tau_dep) S += t;
  std::vector<RationalPoint> out;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    const Rational qr(static_cast<unsigned long>(q));
    std::vector<std::vector<std::int64_t>> axis(d);
    for (std::size_t i = 0; i < d; ++i) {
      const Rational v = qr * x[i];
      const Integer lo = floor_q(v) - 3;
      const Integer hi = ceil_q(v) + 3;
      for (Integer p = lo; p <= hi; ++p) {
        const Rational c = Rational(p) / qr;
        if (c < Rational(M.domain().lower()[i]) || c > Rational(M.domain().upper()[i])) continue;
        if (independent_ok(abs_q(v - Rational(p)), d, m, S, Q)) axis[i].push_back(p.get_si());
      }
    }
    std::vector<std::vector<std::int64_t>> indep;
    std::vector<std::int64_t> cur;
    cartesian(axis, 0, cur, indep);
    for (const auto& p : indep) {
      std::vector<Rational> pt(d);
      for (std::size_t i = 0; i < d; ++i) {
        pt[i] = Rational(static_cast<long>(p[i])) / qr;
        pt[i].canonicalize();
      }
      std::vector<std::vector<std::int64_t>> dep(m);
      for (std::size_t j = 0; j < m; ++j) {
        const Rational v = qr * evaluate(M.component(j), pt);
        for (Integer c = floor_q(v) - 3; c <= ceil_q(v) + 3; ++c) {
          if (dependent_ok(abs_q(v - Rational(c)), tau_dep[j], q, 2)) dep[j].push_back(c.get_si());
        }
      }
      std::vector<std::vector<std::int64_t>> tails;
      std::vector<std::int64_t> tcur;
      cartesian(dep, 0, tcur, tails);
      for (const auto& t : tails) {
        std::vector<std::int64_t> full = p;
        full.insert(full.end(), t.begin(), t.end());
        out.emplace_back(std::move(full), static_cast<std::int64_t>(q));
      }
    }
  }
  return out;
}

std::vector<RationalPoint> enumerate(const MongeManifold& M, const std::vector<double>& tau_dep,
                                     std::int64_t q_min, std::int64_t q_max, int c) {
  const std::size_t d = M.d();
  const std::size_t m = M.m();
  std::vector<RationalPoint> out;
  for (std::int64_t q = q_min; q <= q_max; ++q) {
    const Rational qr(static_cast<long>(q));
    std::vector<std::vector<std::int64_t>> axis(d);
    std::vector<std::vector<Rational>> coord(d);
    for (std::size_t i = 0; i < d; ++i) {
      const Rational lo(M.domain().lower()[i]);
      const Rational hi(M.domain().upper()[i]);
      for (Integer p = floor_q(qr * lo) - 1; p <= ceil_q(qr * hi) + 1; ++p) {
        Rational cpt = Rational(p) / qr;
        cpt.canonicalize();
        if (cpt >= lo && cpt <= hi) {
          axis[i].push_back(p.get_si());
          coord[i].push_back(cpt);
        }
      }
      if (axis[i].empty()) break;
    }
    if (std::any_of(axis.begin(), axis.end(), [](const auto& a) { return a.empty(); })) continue;
    std::vector<std::size_t> idx(d, 0);
    std::vector<Rational> pt(d);
    for (;;) {
      for (std::size_t i = 0; i < d; ++i) pt[i] = coord[i][idx[i]];
      std::vector<std::vector<std::int64_t>> dep(m);
      bool any = true;
      for (std::size_t j = 0; j < m && any; ++j) {
        const Rational v = qr * evaluate(M.component(j), pt);
        for (Integer cc = floor_q(v) - 2; cc <= ceil_q(v) + 2; ++cc) {
          if (dependent_ok(abs_q(v - Rational(cc)), tau_dep[j], static_cast<std::uint64_t>(q), c)) {
            dep[j].push_back(cc.get_si());
          }
        }
        any = !dep[j].empty();
      }
      if (any) {
        std::vector<std::vector<std::int64_t>> tails;
        std::vector<std::int64_t> tcur;
        cartesian(dep, 0, tcur, tails);
        for (const auto& t : tails) {
          std::vector<std::int64_t> full(d);
          for (std::size_t i = 0; i < d; ++i) full[i] = axis[i][idx[i]];
          full.insert(full.end(), t.begin(), t.end());
          out.emplace_back(std::move(full), q);
        }
      }
      std::size_t k = d;
      bool done = true;
      while (k > 0) {
        --k;
        if (++idx[k] < axis[k].size()) { done = false; break; }
        idx[k] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

Rational union_length(std::vector<std::pair<Rational, Rational>> intervals, const Rational& a,
                      const Rational& b) {
  for (auto& [lo, hi] : intervals) {
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  intervals.erase(std::remove_if(intervals.begin(), intervals.end(),
                                 [](const auto& iv) { return iv.first >= iv.second; }),
                  intervals.end());
  std::sort(intervals.begin(), intervals.end());
  Rational total = 0;
  bool open = false;
  Rational cur_lo, cur_hi;
  for (const auto& [lo, hi] : intervals) {
    if (open && lo <= cur_hi) {
      cur_hi = std::max(cur_hi, hi);
      continue;
    }
    if (open) total += cur_hi - cur_lo;
    cur_lo = lo;
    cur_hi = hi;
    open = true;
  }
  if (open) total += cur_hi - cur_lo;
  return total;
}

std::vector<std::pair<Rational, Rational>> cantor_intervals(int depth) {
  std::vector<std::pair<Rational, Rational>> cur = {{Rational(0), Rational(1)}};
  for (int k = 0; k < depth; ++k) {
    std::vector<std::pair<Rational, Rational>> next;
    next.reserve(cur.size() * 2);
    for (const auto& [lo, hi] : cur) {
      const Rational third = (hi - lo) / 3;
      next.emplace_back(lo, lo + third);
      next.emplace_back(hi - third, hi);
    }
    cur = std::move(next);
  }
  return cur;
}

ChainLines section_chain(const std::vector<double>& tau, std::size_t d, std::size_t m) {
  const std::size_t n = d + m;
  long double S = 0;
  for (std::size_t i = d; i < n; ++i) S += tau[i];
  std::vector<long double> a(d);
  for (std::size_t i = 0; i < d; ++i) a[i] = d * (1.0L + tau[i]) / (d + 1.0L - S);
  ChainLines out;
  long double w = INFINITY, r = INFINITY, x = INFINITY;
  for (std::size_t j = 0; j < d; ++j) {
    long double sa = 0, st = 0, sn = 0;
    for (std::size_t i = j; i < d; ++i) {
      sa += a[j] - a[i];
      st += tau[j] - tau[i];
    }
    for (std::size_t i = j; i < n; ++i) sn += tau[j] - tau[i];
    w = std::min(w, (d + sa) / a[j]);
    r = std::min(r, (d + 1.0L - S + st) / (1.0L + tau[j]));
    x = std::min(x, (n + 1.0L + sn) / (1.0L + tau[j]) - m);
  }
  out.weights = static_cast<double>(w);
  out.reduced = static_cast<double>(r);
  out.direct = static_cast<double>(x);
  return out;
}

double rynne_brute(const std::vector<double>& tau) {
  const std::size_t n = tau.size();
  long double best = INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    long double s = 0;
    for (std::size_t i = j; i < n; ++i) s += tau[j] - tau[i];
    best = std::min(best, (n + 1.0L + s) / (1.0L + tau[j]));
  }
  return static_cast<double>(best);
}

double wwx_brute(const std::vector<double>& a) {
  const std::size_t n = a.size();
  long double best = INFINITY;
  for (std::size_t k = 0; k < n; ++k) {
    long double s = 0;
    for (std::size_t i = k; i < n; ++i) s += a[k] - a[i];
    best = std::min(best, (n + s) / a[k]);
  }
  return static_cast<double>(best);
}

}  // namespace wsa::oracle
