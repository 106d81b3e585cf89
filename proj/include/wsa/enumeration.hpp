#pragma once

// Rational points near a Monge chart and the ball / rectangle families
// built on them.
//
// A member of N(f, tau) is (p, q) with p_1/q..p_d/q in the domain box and
//   |q f_j(p_1/q, ..., p_d/q) - p_{d+j}| < q^{-tau_{d+j}}   for every j.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wsa/core.hpp"
#include "wsa/polynomial.hpp"

namespace wsa {

/// Which dependent bound defines membership: the full q^{-tau} of N(f,tau)
/// or the halved q^{-tau}/2 of the Dirichlet search.
enum class DependentBound { full, halved };

struct EnumerationOptions {
  DependentBound bound = DependentBound::full;
  std::uint64_t candidate_cap = 1'000'000'000;
};

/// Members stored flat, (q, p_1..p_n) per row, in (q, lexicographic p) order.
class PointFamily {
 public:
  PointFamily() = default;
  PointFamily(std::size_t d, std::size_t m, std::int64_t q_min, std::int64_t q_max,
              WeightVector tau_dep);

  std::size_t d() const noexcept { return d_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return d_ + m_; }
  std::int64_t q_min() const noexcept { return q_min_; }
  std::int64_t q_max() const noexcept { return q_max_; }
  const WeightVector& tau_dep() const noexcept { return tau_dep_; }

  std::size_t size() const noexcept { return rows_.size() / (n() + 1); }
  bool empty() const noexcept { return rows_.empty(); }
  std::int64_t q(std::size_t i) const { return rows_[i * (n() + 1)]; }
  std::span<const std::int64_t> p(std::size_t i) const {
    return {rows_.data() + i * (n() + 1) + 1, n()};
  }
  RationalPoint at(std::size_t i) const;
  std::vector<RationalPoint> members() const;

  /// Member count for every q in the window, zero counts included.
  const std::map<std::int64_t, std::uint64_t>& counts_by_q() const noexcept {
    return counts_;
  }

  /// Appends a member; q must lie in the window and not precede the last member's q.
  void push_back(std::span<const std::int64_t> p, std::int64_t q);

  /// Members with q <= q_max, window clipped accordingly.
  PointFamily truncated(std::int64_t q_max) const;

  /// Concatenation of two families over adjacent windows [a.q_min, a.q_max]
  /// and [a.q_max + 1, b.q_max]; counts add.
  static PointFamily merge(const PointFamily& a, const PointFamily& b);

  friend bool operator==(const PointFamily& a, const PointFamily& b);

 private:
  std::size_t d_ = 0;
  std::size_t m_ = 0;
  std::int64_t q_min_ = 1;
  std::int64_t q_max_ = 1;
  WeightVector tau_dep_;
  std::vector<std::int64_t> rows_;
  std::map<std::int64_t, std::uint64_t> counts_;
};

/// Upper estimate of the lattice candidates a window costs.
long double enumeration_cost(const MongeManifold& manifold, std::int64_t q_min,
                             std::int64_t q_max);

PointFamily enumerate_points(const MongeManifold& manifold, const WeightVector& tau_dep,
                             std::int64_t q_min, std::int64_t q_max,
                             const EnumerationOptions& options = {});

/// Half-widths k^{a_i} q^{-1-tau_i}, a from the manifold proof weights.
RectSet build_rectangles(const PointFamily& family, const WeightVector& tau_full, double k);

/// Cubes of half-width k q^{-1-(1-m tau~)/d}.
RectSet build_balls(const PointFamily& family, double k);

/// min{1, (1/(2Dd))^{1/a_d}}; 1 when D = 0.
double containment_k(double D, std::size_t d, double a_d);

namespace reference {

/// Serial enumeration with every test done in GMP rationals and MPFR.
PointFamily enumerate_points(const MongeManifold& manifold, const WeightVector& tau_dep,
                             std::int64_t q_min, std::int64_t q_max,
                             DependentBound bound = DependentBound::full);

}  // namespace reference

}  // namespace wsa
