#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wsa/polynomial.hpp"

namespace wsa::test {

inline Monomial mono(const std::string& coeff, std::vector<int> exponents) {
  return Monomial{parse_rational(coeff), std::move(exponents)};
}

inline MongeManifold chart(std::string name, DomainBox box, std::vector<std::vector<Monomial>> comps) {
  const std::size_t d = box.dim();
  std::vector<Polynomial> polys;
  for (auto& c : comps) polys.emplace_back(d, std::move(c));
  return MongeManifold(std::move(name), std::move(box), std::move(polys));
}

inline MongeManifold square_curve() { return chart("x^2", DomainBox::unit(1), {{mono("1", {2})}}); }

inline MongeManifold product_surface() {
  return chart("xy", DomainBox::unit(2), {{mono("1", {1, 1})}});
}

inline MongeManifold affine_curve(const std::string& slope, const std::string& shift) {
  return chart("affine", DomainBox::unit(1), {{mono(slope, {1}), mono(shift, {0})}});
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace wsa::test
