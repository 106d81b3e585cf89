#include "wsa/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "wsa/error.hpp"

namespace wsa {

namespace {

int total_degree(const std::vector<int>& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

Rational rational_pow(const Rational& base, int e) {
  Rational out(1);
  for (int k = 0; k < e; ++k) out *= base;
  return out;
}

/// Exact enclosure of t^e for t in [lo, hi].
std::pair<Rational, Rational> power_interval(const Rational& lo, const Rational& hi, int e) {
  if (e == 0) return {Rational(1), Rational(1)};
  const Rational a = rational_pow(lo, e);
  const Rational b = rational_pow(hi, e);
  if (e % 2 == 1) return {a, b};
  if (lo >= 0) return {a, b};
  if (hi <= 0) return {b, a};
  return {Rational(0), std::max(a, b)};
}

std::pair<Rational, Rational> interval_mul(const std::pair<Rational, Rational>& x,
                                           const std::pair<Rational, Rational>& y) {
  const Rational c[4] = {x.first * y.first, x.first * y.second,
                         x.second * y.first, x.second * y.second};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

}  // namespace

Polynomial::Polynomial(std::size_t variables, std::vector<Monomial> terms)
    : variables_(variables) {
  std::map<std::vector<int>, Rational> merged;
  for (auto& t : terms) {
    if (t.exponents.size() != variables_) {
      throw std::invalid_argument("polynomial: monomial has wrong number of exponents");
    }
    for (int e : t.exponents) {
      if (e < 0) throw std::invalid_argument("polynomial: negative exponent");
    }
    merged[t.exponents] += t.coeff;
  }
  for (auto& [exps, coeff] : merged) {
    coeff.canonicalize();
    if (coeff != 0) terms_.push_back({coeff, exps});
  }
}

int Polynomial::degree() const noexcept {
  int deg = 0;
  for (const auto& t : terms_) deg = std::max(deg, total_degree(t.exponents));
  return deg;
}

Rational Polynomial::evaluate(std::span<const Rational> x) const {
  if (x.size() != variables_) throw std::invalid_argument("polynomial: argument length mismatch");
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational term = t.coeff;
    for (std::size_t i = 0; i < variables_; ++i) term *= rational_pow(x[i], t.exponents[i]);
    sum += term;
  }
  return sum;
}

long double Polynomial::evaluate(std::span<const long double> x) const {
  if (x.size() != variables_) throw std::invalid_argument("polynomial: argument length mismatch");
  long double sum = 0.0L;
  for (const auto& t : terms_) {
    long double term = static_cast<long double>(t.coeff.get_num().get_d()) /
                       static_cast<long double>(t.coeff.get_den().get_d());
    for (std::size_t i = 0; i < variables_; ++i) {
      for (int k = 0; k < t.exponents[i]; ++k) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> x) const {
  std::vector<long double> wide(x.begin(), x.end());
  return static_cast<double>(evaluate(std::span<const long double>(wide)));
}

Polynomial Polynomial::derivative(std::size_t variable) const {
  if (variable >= variables_) throw std::invalid_argument("polynomial: derivative variable out of range");
  std::vector<Monomial> out;
  for (const auto& t : terms_) {
    const int e = t.exponents[variable];
    if (e == 0) continue;
    Monomial d{t.coeff * e, t.exponents};
    d.exponents[variable] = e - 1;
    out.push_back(std::move(d));
  }
  return Polynomial(variables_, std::move(out));
}

std::pair<Rational, Rational> Polynomial::range_enclosure(const DomainBox& box) const {
  if (box.dim() != variables_) throw std::invalid_argument("polynomial: box dimension mismatch");
  std::vector<Rational> lo(variables_), hi(variables_);
  for (std::size_t i = 0; i < variables_; ++i) {
    lo[i] = to_rational(box.lower()[i]);
    hi[i] = to_rational(box.upper()[i]);
  }
  std::pair<Rational, Rational> total{Rational(0), Rational(0)};
  for (const auto& t : terms_) {
    std::pair<Rational, Rational> acc{t.coeff, t.coeff};
    for (std::size_t i = 0; i < variables_; ++i) {
      acc = interval_mul(acc, power_interval(lo[i], hi[i], t.exponents[i]));
    }
    total.first += acc.first;
    total.second += acc.second;
  }
  return total;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ != b.variables_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].exponents != b.terms_[k].exponents) return false;
    if (a.terms_[k].coeff != b.terms_[k].coeff) return false;
  }
  return true;
}

MongeManifold::MongeManifold(std::string name, DomainBox domain,
                             std::vector<Polynomial> components)
    : name_(std::move(name)), domain_(std::move(domain)), components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("manifold: codimension must be >= 1");
  for (const auto& f : components_) {
    if (f.variables() != domain_.dim()) {
      throw std::invalid_argument("manifold: component arity differs from domain dimension");
    }
  }
}

LatticeEvaluator::LatticeEvaluator(const Polynomial& f) : degree_(f.degree()) {
  Integer lcm(1);
  for (const auto& t : f.terms()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  lcm_ = to_i128(lcm);
  for (const auto& t : f.terms()) {
    Rational scaled = t.coeff * Rational(lcm);
    scaled.canonicalize();
    terms_.push_back({to_i128(scaled.get_num()), t.exponents, total_degree(t.exponents)});
  }
}

ScaledValue LatticeEvaluator::scaled(std::span<const std::int64_t> p, std::int64_t q) const {
  i128 total = 0;
  for (const auto& t : terms_) {
    i128 term = t.coeff;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      for (int k = 0; k < t.exponents[i]; ++k) term = checked_mul(term, p[i]);
    }
    for (int k = t.degree; k < degree_; ++k) term = checked_mul(term, q);
    total = checked_add(total, term);
  }
  if (degree_ == 0) return {checked_mul(total, q), lcm_};
  i128 den = lcm_;
  for (int k = 1; k < degree_; ++k) den = checked_mul(den, q);
  return {total, den};
}

}  // namespace wsa
