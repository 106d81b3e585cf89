#include "wsa/benchmarks.hpp"

#include "wsa/error.hpp"

namespace wsa {

namespace {

Monomial term(long num, long den, std::vector<int> exps) {
  Rational c(num, den);
  c.canonicalize();
  return {c, std::move(exps)};
}

}  // namespace

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = {
      "parabola", "circle-chart", "affine", "paraboloid", "twisted-cubic-chart"};
  return names;
}

MongeManifold benchmark_manifold(std::string_view name) {
  if (name == "parabola") {
    return MongeManifold("parabola", DomainBox::unit(1), {Polynomial(1, {term(1, 1, {2})})});
  }
  if (name == "circle-chart") {
    // Degree-6 Taylor polynomial of sqrt(1 - x^2).
    return MongeManifold("circle-chart", DomainBox({-0.5}, {0.5}),
                         {Polynomial(1, {term(1, 1, {0}), term(-1, 2, {2}), term(-1, 8, {4}),
                                         term(-1, 16, {6})})});
  }
  if (name == "affine") {
    return MongeManifold("affine", DomainBox::unit(1), {Polynomial(1, {term(1, 1, {1})})});
  }
  if (name == "paraboloid") {
    return MongeManifold("paraboloid", DomainBox::unit(2),
                         {Polynomial(2, {term(1, 1, {2, 0}), term(1, 1, {0, 2})})});
  }
  if (name == "twisted-cubic-chart") {
    return MongeManifold("twisted-cubic-chart", DomainBox::unit(1),
                         {Polynomial(1, {term(1, 1, {2})}), Polynomial(1, {term(1, 1, {3})})});
  }
  throw ParseError("unknown benchmark manifold '" + std::string(name) + "'");
}

}  // namespace wsa
