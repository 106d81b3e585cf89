#include "wsa/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wsa/error.hpp"

namespace wsa {

namespace {

std::string indexed(const char* what, std::size_t i) {
  std::ostringstream out;
  out << what << " (i=" << i << ')';
  return out.str();
}

void check_positive(Violations& v, std::span<const double> xs, const char* name) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    v.check(std::isfinite(xs[i]) && xs[i] > 0.0, indexed(name, i + 1));
  }
}

void check_non_increasing(Violations& v, std::span<const double> xs, const char* name) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    v.check(xs[i - 1] >= xs[i], indexed(name, i + 1));
  }
}

double sum(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s;
}

/// (n+1 + sum_{i=j}^{n}(tau_j - tau_i)) / (1 + tau_j), j 1-based.
double rynne_branch(std::span<const double> tau, std::size_t j) {
  const std::size_t n = tau.size();
  const double tj = tau[j - 1];
  double acc = 0.0;
  for (std::size_t i = j; i <= n; ++i) acc += tj - tau[i - 1];
  return (static_cast<double>(n) + 1.0 + acc) / (1.0 + tj);
}

}  // namespace

std::string_view to_string(FormulaId id) {
  switch (id) {
    case FormulaId::jarnik_besicovitch: return "jarnik-besicovitch";
    case FormulaId::rynne: return "rynne";
    case FormulaId::planar_curve: return "planar-curve";
    case FormulaId::blvv_simultaneous: return "blvv-simultaneous";
    case FormulaId::manifold_lower_bound: return "manifold-lower-bound";
    case FormulaId::wwx_rectangle: return "wwx-rectangle";
  }
  return "unknown";
}

std::size_t argmin_smallest(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmin of an empty range");
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] < values[best]) best = k;
  }
  return best + 1;
}

DimensionResult jarnik_besicovitch(int n, double tau) {
  Violations v;
  v.check(n >= 1, "n >= 1");
  v.check(std::isfinite(tau) && tau > 0.0, "tau > 0");
  if (n >= 1) v.check(tau >= 1.0 / n, "tau >= 1/n");
  v.throw_if_any();
  return {(n + 1.0) / (tau + 1.0), 0, FormulaId::jarnik_besicovitch};
}

DimensionResult rynne_dimension(std::span<const double> tau) {
  Violations v;
  v.check(!tau.empty(), "n >= 1");
  check_positive(v, tau, "tau_i > 0");
  check_non_increasing(v, tau, "ordering: tau_{i-1} >= tau_i");
  v.check(sum(tau) >= 1.0, "sum of tau_i >= 1");
  v.throw_if_any();
  std::vector<double> branches(tau.size());
  for (std::size_t j = 1; j <= tau.size(); ++j) branches[j - 1] = rynne_branch(tau, j);
  const std::size_t j = argmin_smallest(branches);
  return {branches[j - 1], j, FormulaId::rynne};
}

DimensionResult rynne_dimension(const WeightVector& tau) {
  if (tau.split() != tau.size()) {
    throw HypothesisError({"rynne formula takes a manifold-free weight vector (split = n)"});
  }
  return rynne_dimension(tau.entries());
}

DimensionResult planar_curve_dimension(double tau1, double tau2) {
  Violations v;
  v.check(std::isfinite(tau1) && tau1 > 0.0, "tau1 > 0");
  v.check(std::isfinite(tau2) && tau2 > 0.0, "tau2 > 0");
  const double lo = std::min(tau1, tau2);
  const double hi = std::max(tau1, tau2);
  v.check(lo < 1.0, "min{tau1,tau2} < 1");
  v.check(tau1 + tau2 >= 1.0, "tau1 + tau2 >= 1");
  v.throw_if_any();
  return {(2.0 - lo) / (1.0 + hi), 0, FormulaId::planar_curve};
}

DimensionResult blvv_simultaneous(int n, int m, double tau) {
  Violations v;
  v.check(m >= 1, "m >= 1");
  v.check(m < n, "m < n");
  v.check(std::isfinite(tau) && tau > 0.0, "tau > 0");
  if (n >= 1) v.check(tau >= 1.0 / n, "tau >= 1/n");
  if (m >= 1) v.check(tau < 1.0 / m, "tau < 1/m");
  v.throw_if_any();
  return {(n + 1.0) / (tau + 1.0) - m, 0, FormulaId::blvv_simultaneous};
}

std::vector<std::string> manifold_hypothesis_violations(std::span<const double> tau,
                                                        std::size_t d, std::size_t m) {
  Violations v;
  v.check(d >= 1, "d >= 1");
  v.check(m >= 1, "m >= 1");
  v.check(tau.size() == d + m, "length of tau equals n = d + m");
  if (!v.empty()) return v.names();
  check_positive(v, tau, "tau_i > 0");
  const auto indep = tau.first(d);
  const auto dep = tau.subspan(d);
  check_non_increasing(v, indep, "ordering: tau_{i-1} >= tau_i on independent block");
  const double dep_sum = sum(dep);
  const double dep_max = *std::max_element(dep.begin(), dep.end());
  const double tau_d = indep.back();
  v.check(tau_d >= dep_max, "ordering: tau_d >= max dependent tau");
  v.check(tau_d >= (1.0 - dep_sum) / static_cast<double>(d),
          "floor condition: tau_d >= (1 - sum dependent)/d");
  v.check(dep_sum < 1.0, "dependent-sum: sum of dependent tau < 1");
  return v.names();
}

DimensionResult manifold_lower_bound(std::span<const double> tau, std::size_t d,
                                     std::size_t m) {
  auto violations = manifold_hypothesis_violations(tau, d, m);
  if (!violations.empty()) throw HypothesisError(std::move(violations));
  std::vector<double> branches(d);
  for (std::size_t j = 1; j <= d; ++j) {
    branches[j - 1] = rynne_branch(tau, j) - static_cast<double>(m);
  }
  const std::size_t j = argmin_smallest(branches);
  return {branches[j - 1], j, FormulaId::manifold_lower_bound};
}

DimensionResult manifold_lower_bound(const WeightVector& tau, std::size_t d, std::size_t m) {
  return manifold_lower_bound(tau.entries(), d, m);
}

DimensionResult wwx_rectangle_bound(std::span<const double> a) {
  Violations v;
  v.check(!a.empty(), "n >= 1");
  for (std::size_t i = 0; i < a.size(); ++i) {
    v.check(std::isfinite(a[i]) && a[i] >= 1.0, indexed("a_i >= 1", i + 1));
  }
  check_non_increasing(v, a, "ordering: a_{i-1} >= a_i");
  v.throw_if_any();
  const std::size_t n = a.size();
  std::vector<double> branches(n);
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t i = k; i <= n; ++i) acc += a[k - 1] - a[i - 1];
    branches[k - 1] = (static_cast<double>(n) + acc) / a[k - 1];
  }
  const std::size_t k = argmin_smallest(branches);
  return {branches[k - 1], k, FormulaId::wwx_rectangle};
}

DimensionResult wwx_rectangle_bound(const WeightVector& a) {
  return wwx_rectangle_bound(a.entries());
}

WeightVector proof_weight_vector_rynne(const WeightVector& tau) {
  const double n = static_cast<double>(tau.size());
  if (tau.size() == 0) throw HypothesisError({"n >= 1"});
  std::vector<double> a(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) a[i] = n * (1.0 + tau[i]) / (1.0 + n);
  return WeightVector(std::move(a), tau.split());
}

WeightVector proof_weight_vector_manifold(std::span<const double> tau, std::size_t d,
                                          std::size_t m) {
  Violations v;
  v.check(d >= 1, "d >= 1");
  v.check(m >= 1, "m >= 1");
  v.check(tau.size() == d + m, "length of tau equals n = d + m");
  v.throw_if_any();
  check_positive(v, tau, "tau_i > 0");
  const auto indep = tau.first(d);
  const double dep_sum = sum(tau.subspan(d));
  check_non_increasing(v, indep, "ordering: tau_{i-1} >= tau_i on independent block");
  v.check(indep.back() >= (1.0 - dep_sum) / static_cast<double>(d),
          "floor condition: tau_d >= (1 - sum dependent)/d");
  v.check(dep_sum < 1.0, "dependent-sum: sum of dependent tau < 1");
  v.throw_if_any();
  const double dd = static_cast<double>(d);
  std::vector<double> a(d);
  for (std::size_t i = 0; i < d; ++i) a[i] = dd * (1.0 + indep[i]) / (dd + 1.0 - dep_sum);
  // The floor condition gives a_i >= 1 exactly; clamp the last-ulp rounding.
  for (double& ai : a) ai = std::max(ai, 1.0);
  return WeightVector::plain(std::move(a));
}

WeightVector proof_weight_vector_manifold(const WeightVector& tau, std::size_t d,
                                          std::size_t m) {
  return proof_weight_vector_manifold(tau.entries(), d, m);
}

std::vector<std::uint64_t> upper_order_ladder(std::uint64_t q_max) {
  if (q_max < 16) throw HypothesisError({"q_max >= 16"});
  const auto lo = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<long double>(q_max))));
  std::vector<std::uint64_t> rungs;
  for (int k = 0;; ++k) {
    const long double r = static_cast<long double>(lo) * std::exp2(k / 16.0L);
    const auto q = static_cast<std::uint64_t>(std::llround(r));
    if (q >= q_max) break;
    if (rungs.empty() || rungs.back() != q) rungs.push_back(q);
  }
  rungs.push_back(q_max);
  return rungs;
}

UpperOrderEstimate estimate_upper_order(std::span<const ApproxFunction> psi,
                                        std::uint64_t q_max) {
  if (psi.empty()) throw std::invalid_argument("upper order: no approximation functions");
  const auto ladder = upper_order_ladder(q_max);
  UpperOrderEstimate out;
  out.window_lo = ladder.front();
  out.window_hi = ladder.back();
  out.v.assign(psi.size(), -std::numeric_limits<double>::infinity());
  out.samples.resize(psi.size());
  Violations v;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    for (std::uint64_t q : ladder) {
      const long double value = psi[i](q);
      if (!(value > 0.0L) || !(value < 1.0L) || !std::isfinite(value)) {
        std::ostringstream name;
        name << "psi_" << (i + 1) << "(" << q << ") in (0,1)";
        v.check(false, name.str());
        break;
      }
      const double order = static_cast<double>(-std::log(value) /
                                               std::log(static_cast<long double>(q)));
      out.samples[i].push_back({q, order});
      out.v[i] = std::max(out.v[i], order);
    }
  }
  v.throw_if_any();
  return out;
}

}  // namespace wsa
