#pragma once

// Closed-form Hausdorff dimension formulas for weighted simultaneous
// approximation, their hypothesis validators, and the weight vectors that
// turn a ball family into the rectangle family of the lower-bound proofs.
//
// Minimisation indices are 1-based, as in the formulas; ties go to the
// smallest index.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wsa/core.hpp"

namespace wsa {

enum class FormulaId {
  jarnik_besicovitch,
  rynne,
  planar_curve,
  blvv_simultaneous,
  manifold_lower_bound,
  wwx_rectangle,
};

std::string_view to_string(FormulaId id);

struct DimensionResult {
  double value = 0.0;
  std::size_t argmin_j = 0;  // 0 when the formula has no minimisation
  FormulaId formula = FormulaId::jarnik_besicovitch;
};

/// (n+1)/(tau+1) for tau >= 1/n.
DimensionResult jarnik_besicovitch(int n, double tau);

/// min_j (n+1+sum_{i>=j}(tau_j - tau_i))/(1+tau_j) over 1 <= j <= n.
/// Requires tau sorted non-increasing with sum >= 1.
DimensionResult rynne_dimension(std::span<const double> tau);
DimensionResult rynne_dimension(const WeightVector& tau);

/// (2 - min)/(1 + max) for 0 < min < 1 and tau1 + tau2 >= 1.
DimensionResult planar_curve_dimension(double tau1, double tau2);

/// (n+1)/(tau+1) - m for 1/n <= tau < 1/m, m < n.
DimensionResult blvv_simultaneous(int n, int m, double tau);

/// Every violated hypothesis of the weighted manifold bound, by name.
std::vector<std::string> manifold_hypothesis_violations(std::span<const double> tau,
                                                        std::size_t d, std::size_t m);

/// min over 1 <= j <= d of (n+1+sum_{i=j}^n (tau_j - tau_i))/(tau_j+1) - m.
DimensionResult manifold_lower_bound(std::span<const double> tau, std::size_t d,
                                     std::size_t m);
DimensionResult manifold_lower_bound(const WeightVector& tau, std::size_t d,
                                     std::size_t m);

/// min_k (n + sum_{i>=k}(a_k - a_i))/a_k for a_1 >= ... >= a_n >= 1.
DimensionResult wwx_rectangle_bound(std::span<const double> a);
DimensionResult wwx_rectangle_bound(const WeightVector& a);

/// a_i = n(1+tau_i)/(1+n); turns the Dirichlet balls q^{-1-1/n} into the
/// rectangles q^{-1-tau_i}.
WeightVector proof_weight_vector_rynne(const WeightVector& tau);

/// a_i = d(1+tau_i)/(d+1-m*tilde_tau) for the independent axes i <= d.
/// Checks the conditions that make every a_i >= 1 (ordering of the
/// independent block, dependent sum < 1, floor condition).
WeightVector proof_weight_vector_manifold(std::span<const double> tau, std::size_t d,
                                          std::size_t m);
WeightVector proof_weight_vector_manifold(const WeightVector& tau, std::size_t d,
                                          std::size_t m);

/// Index (1-based) of the smallest value; ties go to the smallest index.
std::size_t argmin_smallest(std::span<const double> values);

using ApproxFunction = std::function<long double(std::uint64_t)>;

struct UpperOrderSample {
  std::uint64_t q = 0;
  double order = 0.0;  // -log psi(q) / log q
};

struct UpperOrderEstimate {
  std::vector<double> v;
  std::vector<std::vector<UpperOrderSample>> samples;  // per axis
  std::uint64_t window_lo = 0;
  std::uint64_t window_hi = 0;
};

/// Integer rungs from ceil(sqrt(q_max)) to q_max, ratio 2^{1/16}, q_max included.
std::vector<std::uint64_t> upper_order_ladder(std::uint64_t q_max);

/// Tail maximum of -log psi_i(q)/log q over upper_order_ladder(q_max),
/// standing in for the limsup that defines the upper order.
UpperOrderEstimate estimate_upper_order(std::span<const ApproxFunction> psi,
                                        std::uint64_t q_max);

}  // namespace wsa
