#pragma once

// Constructive Dirichlet-style search on a Monge chart.
//
// For x in the chart domain and Q past the threshold Q0 there is a q <= Q
// and integers p with
//   |x_i - p_i/q|                 < 4^{m/d} / (q Q^{(1 - m tau~)/d})   (i <= d)
//   |f_j(p_1/q,...,p_d/q) - p_{d+j}/q| < q^{-tau_j - 1} / 2              (j <= m)
// The search scans q upward and returns the smallest accepting q. Every
// inequality is decided exactly (see bounds.hpp).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsa/core.hpp"
#include "wsa/exact.hpp"
#include "wsa/polynomial.hpp"
#include "wsa/snap.hpp"

namespace wsa {

struct ManifoldConstants {
  enum class Method { interval_bound, grid_sample };

  double C = 0.0;  // sup |d^2 f_j / dx_i dx_k|
  double D = 0.0;  // sup |d f_j / dx_i|
  Rational C_exact;  // certified rational bound (interval method only)
  Rational D_exact;
  Method method = Method::interval_bound;
  std::size_t resolution = 0;  // grid points per axis (grid method only)
};

/// Certified bounds by interval evaluation of the formal derivatives.
ManifoldConstants manifold_constants(const MongeManifold& manifold);

/// Uncertified estimate from the derivative values on a uniform grid.
ManifoldConstants manifold_constants_sampled(const MongeManifold& manifold,
                                             std::size_t points_per_axis);

/// Smallest Q0 such that (4^{-m} Q^{1-m tau~})^{-1/d} < min{1, r, (2Cd^2)^{-1/2}}
/// for every Q >= Q0. r is the distance from x to the domain boundary unless
/// overridden; with C = 0 the curvature term is dropped.
std::uint64_t compute_Q0(const MongeManifold& manifold, const WeightVector& tau_dep,
                         std::span<const SnappedReal> x,
                         std::optional<double> r_override = std::nullopt);

struct DirichletSolution {
  RationalPoint point;
  std::uint64_t Q = 0;
  std::vector<double> independent_errors;  // |x_i - p_i/q|
  std::vector<double> dependent_errors;    // |f_j(p/q) - p_{d+j}/q|
};

/// Smallest-q solution for the budget Q, without requiring Q >= Q0.
std::optional<DirichletSolution> first_dirichlet_solution(
    const MongeManifold& manifold, const WeightVector& tau_dep,
    std::span<const SnappedReal> x, std::uint64_t Q);

/// Every accepted (p, q) with q <= Q, in (q, lexicographic p) order.
std::vector<RationalPoint> dirichlet_solutions(const MongeManifold& manifold,
                                               const WeightVector& tau_dep,
                                               std::span<const SnappedReal> x,
                                               std::uint64_t Q);

/// Checks Q >= Q0 and x interior, then searches. An empty search for an
/// admissible Q raises TheoremViolation.
DirichletSolution solve_dirichlet(const MongeManifold& manifold,
                                  const WeightVector& tau_dep,
                                  std::span<const SnappedReal> x, std::uint64_t Q);

struct SweepResult {
  std::vector<DirichletSolution> solutions;  // one per ladder rung
  std::size_t distinct_q = 0;
};

/// Solves for each rung of an increasing Q ladder and re-checks the
/// q-only bound |x_i - p_i/q| < 4^{m/d} q^{-1-(1-m tau~)/d}. A ladder of two
/// or more rungs whose solutions all share one q raises TheoremViolation.
SweepResult infinitude_sweep(const MongeManifold& manifold, const WeightVector& tau_dep,
                             std::span<const SnappedReal> x,
                             std::span<const std::uint64_t> Q_ladder);

/// Exact re-check of a solution's invariants; returns the violated ones.
std::vector<std::string> verify_solution(const DirichletSolution& solution,
                                         const MongeManifold& manifold,
                                         const WeightVector& tau_dep,
                                         std::span<const SnappedReal> x);

namespace reference {

/// Serial scan deciding every inequality in GMP rationals and MPFR.
std::optional<DirichletSolution> first_dirichlet_solution(
    const MongeManifold& manifold, const WeightVector& tau_dep,
    std::span<const SnappedReal> x, std::uint64_t Q);

std::vector<RationalPoint> dirichlet_solutions(const MongeManifold& manifold,
                                               const WeightVector& tau_dep,
                                               std::span<const SnappedReal> x,
                                               std::uint64_t Q);

}  // namespace reference

}  // namespace wsa
