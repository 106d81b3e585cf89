#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wsa/core.hpp"
#include "wsa/error.hpp"
#include "wsa/polynomial.hpp"

using namespace wsa;

TEST_CASE("dilate examples") {
  const std::vector<double> c1{0.5, 0.5};
  auto r1 = dilate(c1, 0.1, WeightVector::plain({1, 1}));
  CHECK(r1.half_widths[0] == doctest::Approx(0.1));
  CHECK(r1.half_widths[1] == doctest::Approx(0.1));
  CHECK(r1.center == c1);

  const std::vector<double> c2{0, 0};
  auto r2 = dilate(c2, 0.1, WeightVector::plain({2, 1}));
  CHECK(r2.half_widths[0] == doctest::Approx(0.01));
  CHECK(r2.half_widths[1] == doctest::Approx(0.1));

  const std::vector<double> c3{0.3};
  auto r3 = dilate(c3, 0.25, WeightVector::plain({3}));
  CHECK(r3.half_widths[0] == 0.015625);
}

TEST_CASE("dilate identity law") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 4;
    std::vector<double> c(n);
    for (auto& v : c) v = test::uniform(rng, -5, 5);
    const double r = test::uniform(rng, 1e-6, 0.999);
    const auto rect = dilate(c, r, WeightVector::plain(std::vector<double>(n, 1.0)));
    CHECK(rect.center == c);
    for (double hw : rect.half_widths) CHECK(hw == r);
  }
}

TEST_CASE("dilate is antitone in each exponent below radius one") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const double r = test::uniform(rng, 0.01, 0.99);
    std::vector<double> a{test::uniform(rng, 1, 3), test::uniform(rng, 1, 3)};
    std::sort(a.rbegin(), a.rend());
    const std::vector<double> c{0.2, 0.7};
    const auto base = dilate(c, r, WeightVector::plain(a));
    auto bigger = a;
    bigger[0] += test::uniform(rng, 0.01, 1);
    const auto shrunk = dilate(c, r, WeightVector::plain(bigger));
    CHECK(shrunk.half_widths[0] < base.half_widths[0]);
    CHECK(shrunk.half_widths[1] == base.half_widths[1]);
  }
}

TEST_CASE("rect_intersects_box examples") {
  const DomainBox box = DomainBox::unit(2);
  CHECK_FALSE(rect_intersects_box(Hyperrectangle({2, 2}, {0.1, 0.1}), box));
  CHECK(rect_intersects_box(Hyperrectangle({1, 1}, {0.5, 0.5}), box));
  CHECK(rect_intersects_box(Hyperrectangle({0.5, 0.5}, {1, 1}), box));
  // open rectangle touching the closed box in one face only
  CHECK_FALSE(rect_intersects_box(Hyperrectangle({1.5, 0.5}, {0.5, 0.1}), box));
}

TEST_CASE("weight vector rejects unsorted independent block") {
  CHECK_THROWS_AS(WeightVector({0.3, 0.5}, 2), HypothesisError);
  CHECK_NOTHROW(WeightVector({0.5, 0.3, 0.9}, 2));
  CHECK(WeightVector({0.5, 0.3, 0.4}, 2).dependent_sum() == doctest::Approx(0.4));
}

TEST_CASE("domain box boundary distance") {
  const DomainBox box({0, -1}, {1, 1});
  const std::vector<double> x{0.25, 0.5};
  CHECK(box.boundary_distance(x) == doctest::Approx(0.25));
  CHECK(box.contains_interior(x));
  const std::vector<double> edge{0.0, 0.0};
  CHECK(box.contains(edge));
  CHECK_FALSE(box.contains_interior(edge));
}

TEST_CASE("polynomial derivative and canonical form") {
  using test::mono;
  const Polynomial f(2, {mono("3", {2, 1}), mono("-1/2", {0, 3}), mono("1", {2, 1})});
  CHECK(f.terms().size() == 2);
  CHECK(f.degree() == 3);
  const Polynomial fx = f.derivative(0);
  CHECK(fx == Polynomial(2, {mono("8", {1, 1})}));
  const Polynomial fyy = f.derivative(1).derivative(1);
  CHECK(fyy == Polynomial(2, {mono("-3", {0, 1})}));
  CHECK(Polynomial(2, {mono("1", {1, 0}), mono("-1", {1, 0})}).is_zero());
}

TEST_CASE("polynomial exact and floating evaluation agree") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> height(-10000, 10000);
  std::uniform_int_distribution<int> pos(1, 10000);
  std::uniform_int_distribution<int> exp(0, 3);
  for (int t = 0; t < 300; ++t) {
    std::vector<Monomial> terms;
    for (int k = 0; k < 4; ++k) {
      terms.push_back({Rational(height(rng), pos(rng)), {exp(rng), exp(rng)}});
    }
    const Polynomial f(2, terms);
    std::vector<Rational> xq{Rational(height(rng), pos(rng)), Rational(height(rng), pos(rng))};
    for (auto& v : xq) v.canonicalize();
    const std::vector<double> xd{xq[0].get_d(), xq[1].get_d()};
    const double exact = to_double(f.evaluate(std::span<const Rational>(xq)));
    const double approx = f.evaluate(std::span<const double>(xd));
    // magnitude of the largest term bounds cancellation error
    double scale = 0.0;
    for (const auto& term : f.terms()) {
      double v = std::abs(term.coeff.get_d());
      for (std::size_t i = 0; i < 2; ++i) v *= std::pow(std::abs(xd[i]), term.exponents[i]);
      scale = std::max(scale, v);
    }
    CHECK(std::abs(exact - approx) <= 1e-12 * std::max(scale, std::abs(exact)) + 1e-300);
  }
}

TEST_CASE("range enclosure contains sampled values") {
  using test::mono;
  const Polynomial f(1, {mono("1", {3}), mono("-3/2", {1}), mono("1/4", {0})});
  const DomainBox box({-1}, {2});
  const auto [lo, hi] = f.range_enclosure(box);
  for (int i = 0; i <= 300; ++i) {
    const Rational x = Rational(-1) + Rational(i, 100);
    const std::vector<Rational> xs{x};
    const Rational v = f.evaluate(std::span<const Rational>(xs));
    CHECK(lo <= v);
    CHECK(v <= hi);
  }
}

TEST_CASE("lattice evaluator matches rational evaluation") {
  using test::mono;
  const Polynomial f(2, {mono("1/3", {2, 1}), mono("-5/7", {0, 2}), mono("2", {0, 0})});
  const LatticeEvaluator ev(f);
  std::mt19937_64 rng(14);
  for (int t = 0; t < 500; ++t) {
    const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 100000);
    const std::vector<std::int64_t> p{static_cast<std::int64_t>(rng() % (q + 1)),
                                      static_cast<std::int64_t>(rng() % (q + 1))};
    const auto s = ev.scaled(p, q);
    const std::vector<Rational> x{Rational(Integer(static_cast<long>(p[0])), Integer(static_cast<long>(q))),
                                  Rational(Integer(static_cast<long>(p[1])), Integer(static_cast<long>(q)))};
    Rational expect = Rational(Integer(static_cast<long>(q))) * f.evaluate(std::span<const Rational>(x));
    Rational got(to_integer(s.num), to_integer(s.den));
    got.canonicalize();
    expect.canonicalize();
    CHECK(got == expect);
  }
}

TEST_CASE("rect set flat storage") {
  RectSet set(2);
  const std::vector<double> c{0.5, 0.25}, h{0.1, 0.2};
  set.push_back(c, h);
  set.push_back(Hyperrectangle({0.1, 0.9}, {0.01, 0.02}));
  CHECK(set.size() == 2);
  CHECK(set.at(1).center == std::vector<double>{0.1, 0.9});
  const RectSet twice = set.scaled(2.0);
  CHECK(twice.half_widths(0)[1] == 0.4);
  CHECK(twice.center(0)[0] == 0.5);
}
