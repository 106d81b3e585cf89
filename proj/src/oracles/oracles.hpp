#pragma once

// Brute-force oracles for tests and the acceptance suite. They share no
// search or bound code with the library: inequalities are rearranged into
// products of powers and decided in 512-bit MPFR, polynomials are evaluated
// term by term in GMP, and candidate ranges are deliberately wide.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wsa/core.hpp"
#include "wsa/exact.hpp"
#include "wsa/polynomial.hpp"

namespace wsa::oracle {

/// f(x) at a rational point, term by term.
Rational evaluate(const Polynomial& f, const std::vector<Rational>& x);

/// |q x_i - p_i|^d Q^{1 - S} < 4^m, S the dependent sum.
bool independent_ok(const Rational& err, std::size_t d, std::size_t m, double S, std::uint64_t Q);

/// c |q f - p'| q^{tau} < 1 with c = 2 (Dirichlet) or c = 1 (N(f,tau)).
bool dependent_ok(const Rational& err, double tau, std::uint64_t q, int c);

/// Every (p, q), q <= Q, meeting both inequality families, in (q, lex p) order.
std::vector<RationalPoint> dirichlet_solutions(const MongeManifold& M,
                                               const std::vector<double>& tau_dep,
                                               const std::vector<Rational>& x, std::uint64_t Q);

/// Every member of N(f,tau) (c = 1) or of its halved variant (c = 2).
std::vector<RationalPoint> enumerate(const MongeManifold& M, const std::vector<double>& tau_dep,
                                     std::int64_t q_min, std::int64_t q_max, int c = 1);

/// Exact length of the union of open intervals, clipped to [a, b].
Rational union_length(std::vector<std::pair<Rational, Rational>> intervals, const Rational& a,
                      const Rational& b);

/// Closed intervals of the middle-thirds Cantor construction at `depth`.
std::vector<std::pair<Rational, Rational>> cantor_intervals(int depth);

/// The three lines of the weight-vector reduction for the manifold bound:
///   min_j (d + sum_{i=j}^d (a_j - a_i)) / a_j
///   min_j (d + 1 - S + sum_{i=j}^d (tau_j - tau_i)) / (1 + tau_j)
///   min_j (n + 1 + sum_{i=j}^n (tau_j - tau_i)) / (1 + tau_j) - m
struct ChainLines {
  double weights = 0.0;
  double reduced = 0.0;
  double direct = 0.0;
};
ChainLines section_chain(const std::vector<double>& tau, std::size_t d, std::size_t m);

/// min_j (n + 1 + sum_{i=j}^n (tau_j - tau_i)) / (1 + tau_j), all n branches.
double rynne_brute(const std::vector<double>& tau);

/// min_k (n + sum_{i=k}^n (a_k - a_i)) / a_k, all n branches.
double wwx_brute(const std::vector<double>& a);

}  // namespace wsa::oracle
