#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wsa/core.hpp"
#include "wsa/exact.hpp"

namespace wsa {

struct Monomial {
  Rational coeff;
  std::vector<int> exponents;
};

/// Multivariate polynomial with rational coefficients, kept in canonical
/// form (like terms merged, zero terms dropped, sorted by exponent).
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::size_t variables, std::vector<Monomial> terms);

  std::size_t variables() const noexcept { return variables_; }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree; 0 for constants and for the zero polynomial.
  int degree() const noexcept;

  Rational evaluate(std::span<const Rational> x) const;
  long double evaluate(std::span<const long double> x) const;
  double evaluate(std::span<const double> x) const;

  Polynomial derivative(std::size_t variable) const;

  /// Natural interval extension over the box: an exact rational enclosure
  /// [lo, hi] of the range of the polynomial on the box.
  std::pair<Rational, Rational> range_enclosure(const DomainBox& box) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  std::size_t variables_ = 0;
  std::vector<Monomial> terms_;
};

/// Chart M = {(x, f(x)) : x in U} with polynomial components f_1..f_m.
class MongeManifold {
 public:
  MongeManifold() = default;
  MongeManifold(std::string name, DomainBox domain,
                std::vector<Polynomial> components);

  const std::string& name() const noexcept { return name_; }
  std::size_t d() const noexcept { return domain_.dim(); }
  std::size_t m() const noexcept { return components_.size(); }
  std::size_t n() const noexcept { return d() + m(); }
  const DomainBox& domain() const noexcept { return domain_; }
  const Polynomial& component(std::size_t j) const { return components_[j]; }
  const std::vector<Polynomial>& components() const noexcept {
    return components_;
  }

 private:
  std::string name_;
  DomainBox domain_;
  std::vector<Polynomial> components_;
};

/// q * f(p/q) as the exact ratio num / den (den > 0).
struct ScaledValue {
  i128 num = 0;
  i128 den = 1;
};

/// Evaluates q * f(p/q) exactly in checked 128-bit integers.
///
/// With L the lcm of the coefficient denominators and D the total degree,
/// L q^D f(p/q) is an integer; the evaluator returns it over L q^{D-1}.
class LatticeEvaluator {
 public:
  LatticeEvaluator() = default;
  explicit LatticeEvaluator(const Polynomial& f);

  ScaledValue scaled(std::span<const std::int64_t> p, std::int64_t q) const;

 private:
  struct Term {
    i128 coeff;
    std::vector<int> exponents;
    int degree;
  };
  std::vector<Term> terms_;
  i128 lcm_ = 1;
  int degree_ = 0;
};

}  // namespace wsa
