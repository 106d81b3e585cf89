#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "wsa/error.hpp"
#include "wsa/formulas.hpp"

using namespace wsa;

namespace {

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.rbegin(), v.rend());
  return v;
}

// Random valid rynne input: n in 1..5, sorted, sum >= 1.
std::vector<double> random_rynne(std::mt19937_64& rng) {
  const std::size_t n = 1 + rng() % 5;
  for (;;) {
    std::vector<double> tau(n);
    for (auto& t : tau) t = test::uniform(rng, 0.01, 2.0);
    double s = 0;
    for (double t : tau) s += t;
    if (s >= 1) return sorted_desc(tau);
  }
}

}  // namespace

TEST_CASE("jarnik besicovitch examples") {
  CHECK(jarnik_besicovitch(2, 0.5).value == doctest::Approx(2));
  CHECK(jarnik_besicovitch(1, 2).value == doctest::Approx(2.0 / 3.0));
  CHECK(jarnik_besicovitch(3, 1).value == doctest::Approx(2));
  CHECK_THROWS_AS(jarnik_besicovitch(2, 0.4), HypothesisError);
}

TEST_CASE("rynne examples") {
  const std::vector<double> a{1, 0.5};
  const auto r = rynne_dimension(std::span<const double>(a));
  CHECK(r.value == doctest::Approx(1.75));
  CHECK(r.argmin_j == 1);
  // j=1 gives 3.2/1.6, j=2 gives 3/1.4
  const std::vector<double> b{0.6, 0.4};
  const auto rb = rynne_dimension(std::span<const double>(b));
  CHECK(rb.value == doctest::Approx(std::min(3.2 / 1.6, 3.0 / 1.4)));
  CHECK(rb.value == doctest::Approx(oracle::rynne_brute(b)));
  CHECK(rb.argmin_j == 1);
  for (double t : {0.5, 0.7, 1.3}) {
    const std::vector<double> eq(3, t);
    CHECK(rynne_dimension(std::span<const double>(eq)).value == doctest::Approx(4.0 / (1 + t)));
  }
  const std::vector<double> unsorted{0.5, 1};
  CHECK_THROWS_AS(rynne_dimension(std::span<const double>(unsorted)), HypothesisError);
  const std::vector<double> small{0.3, 0.3};
  CHECK_THROWS_AS(rynne_dimension(std::span<const double>(small)), HypothesisError);
}

TEST_CASE("planar curve examples") {
  CHECK(planar_curve_dimension(0.5, 0.5).value == doctest::Approx(1));
  CHECK(planar_curve_dimension(0.8, 0.3).value == doctest::Approx(1.7 / 1.8));
  CHECK(planar_curve_dimension(1.2, 0.9).value == doctest::Approx(0.5));
  CHECK_THROWS_AS(planar_curve_dimension(0.3, 0.3), HypothesisError);
  CHECK_THROWS_AS(planar_curve_dimension(1.2, 1.1), HypothesisError);
}

TEST_CASE("blvv examples") {
  CHECK(blvv_simultaneous(3, 1, 1.0 / 3).value == doctest::Approx(2));
  CHECK(blvv_simultaneous(2, 1, 0.5).value == doctest::Approx(1));
  CHECK_THROWS_AS(blvv_simultaneous(2, 1, 1), HypothesisError);
}

TEST_CASE("manifold lower bound examples") {
  const std::vector<double> t{0.8, 0.3};
  CHECK(manifold_lower_bound(t, 1, 1).value == doctest::Approx(3.5 / 1.8 - 1));
  CHECK(manifold_lower_bound(t, 1, 1).value == doctest::Approx(planar_curve_dimension(0.8, 0.3).value));
  const std::vector<double> bad{0.5, 0.3, 0.4};
  try {
    manifold_lower_bound(bad, 2, 1);
    FAIL("expected a hypothesis violation");
  } catch (const HypothesisError& e) {
    CHECK(!e.violations().empty());
  }
  CHECK(!manifold_hypothesis_violations(bad, 2, 1).empty());
}

TEST_CASE("wwx examples") {
  CHECK(wwx_rectangle_bound(std::vector<double>{1, 1, 1}).value == doctest::Approx(3));
  const auto r = wwx_rectangle_bound(std::vector<double>{2, 1});
  CHECK(r.value == doctest::Approx(1.5));
  CHECK(r.argmin_j == 1);
  const std::vector<double> a{2, 1.5, 1};
  CHECK(wwx_rectangle_bound(a).value == doctest::Approx(oracle::wwx_brute(a)));
  CHECK(wwx_rectangle_bound(a).value == doctest::Approx(2.25));
  CHECK_THROWS_AS(wwx_rectangle_bound(std::vector<double>{2, 0.5}), HypothesisError);
}

TEST_CASE("proof weight examples") {
  auto a1 = proof_weight_vector_rynne(WeightVector::plain({1}));
  CHECK(a1[0] == doctest::Approx(1));
  auto a2 = proof_weight_vector_rynne(WeightVector::plain({1, 0.5}));
  CHECK(a2[0] == doctest::Approx(4.0 / 3));
  CHECK(a2[1] == doctest::Approx(1));
  auto a3 = proof_weight_vector_rynne(WeightVector::plain({0.25, 0.25, 0.25, 0.25}));
  for (std::size_t i = 0; i < 4; ++i) CHECK(a3[i] == doctest::Approx(1));

  const std::vector<double> t1{0.5, 0.3, 0.4};
  auto m1 = proof_weight_vector_manifold(t1, 2, 1);
  CHECK(m1.size() == 2);
  CHECK(m1[0] == doctest::Approx(3 / 2.6));
  CHECK(m1[1] == doctest::Approx(1.0));
  const std::vector<double> t2{0.7, 0.5};
  CHECK(proof_weight_vector_manifold(t2, 1, 1)[0] == doctest::Approx(1.7 / 1.5));
  const std::vector<double> t3{0.3, 0.3, 0.4};
  auto m3 = proof_weight_vector_manifold(t3, 2, 1);
  CHECK(m3[0] == doctest::Approx(1));
  CHECK(m3[1] == doctest::Approx(1));
}

TEST_CASE("rynne matches the branch oracle and stays in range") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 1000; ++t) {
    const auto tau = random_rynne(rng);
    const auto r = rynne_dimension(std::span<const double>(tau));
    CHECK(std::abs(r.value - oracle::rynne_brute(tau)) <= 1e-12);
    CHECK(r.value >= 0);
    CHECK(r.value <= static_cast<double>(tau.size()));
  }
}

TEST_CASE("rynne composition with proof weights") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<double> tau(n);
    for (auto& v : tau) v = test::uniform(rng, 1.0 / static_cast<double>(n), 2.0);
    tau = sorted_desc(tau);
    const auto a = proof_weight_vector_rynne(WeightVector::plain(tau));
    CHECK(std::abs(wwx_rectangle_bound(a).value - rynne_dimension(std::span<const double>(tau)).value) <= 1e-12);
  }
}

TEST_CASE("manifold reduction chain") {
  std::mt19937_64 rng(23);
  int tested = 0;
  while (tested < 1000) {
    const std::size_t d = 1 + rng() % 3, m = 1 + rng() % 2;
    std::vector<double> tau(d + m);
    for (auto& v : tau) v = test::uniform(rng, 0.0, 1.0);
    std::sort(tau.begin(), tau.begin() + static_cast<std::ptrdiff_t>(d), std::greater<>());
    if (!manifold_hypothesis_violations(tau, d, m).empty()) continue;
    ++tested;
    const auto lines = oracle::section_chain(tau, d, m);
    const double lib = manifold_lower_bound(tau, d, m).value;
    CHECK(std::abs(lines.weights - lines.reduced) <= 1e-12);
    CHECK(std::abs(lines.reduced - lines.direct) <= 1e-12);
    CHECK(std::abs(lines.direct - lib) <= 1e-12);
    const auto a = proof_weight_vector_manifold(tau, d, m);
    CHECK(std::abs(wwx_rectangle_bound(a).value - lib) <= 1e-12);
  }
}

TEST_CASE("collapse identities") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % (n - 1));
    const int d = n - m;
    const double lo = std::max(1.0 / n, 1.0 / (d + m));
    const double tj = test::uniform(rng, 1.0 / n, 3.0);
    const std::vector<double> eq(static_cast<std::size_t>(n), tj);
    CHECK(std::abs(rynne_dimension(std::span<const double>(eq)).value - jarnik_besicovitch(n, tj).value) <= 1e-12);
    const double tb = test::uniform(rng, lo, 1.0 / m);
    const std::vector<double> eb(static_cast<std::size_t>(n), tb);
    if (tb >= (1 - m * tb) / d && tb < 1.0 / m) {
      CHECK(std::abs(manifold_lower_bound(eb, static_cast<std::size_t>(d), static_cast<std::size_t>(m)).value -
                     blvv_simultaneous(n, m, tb).value) <= 1e-12);
    }
  }
}

TEST_CASE("dimension values are non-increasing in each weight") {
  std::mt19937_64 rng(25);
  int checked = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto tau = random_rynne(rng);
    const std::size_t i = rng() % tau.size();
    auto up = tau;
    up[i] += test::uniform(rng, 1e-6, 0.3);
    if (!std::is_sorted(up.rbegin(), up.rend())) continue;
    ++checked;
    CHECK(rynne_dimension(std::span<const double>(up)).value <=
          rynne_dimension(std::span<const double>(tau)).value + 1e-12);
  }
  CHECK(checked > 500);
  checked = 0;
  for (int t = 0; t < 4000; ++t) {
    std::vector<double> tau{test::uniform(rng, 0, 1.5), test::uniform(rng, 0, 1)};
    if (!manifold_hypothesis_violations(tau, 1, 1).empty()) continue;
    auto up = tau;
    up[rng() % 2] += test::uniform(rng, 1e-6, 0.2);
    if (!manifold_hypothesis_violations(up, 1, 1).empty()) continue;
    ++checked;
    CHECK(manifold_lower_bound(up, 1, 1).value <= manifold_lower_bound(tau, 1, 1).value + 1e-12);
  }
  CHECK(checked > 200);
}

TEST_CASE("argmin picks the smallest minimiser") {
  CHECK(argmin_smallest(std::vector<double>{2, 1, 1, 3}) == 2);
  CHECK(argmin_smallest(std::vector<double>{1, 1}) == 1);
  std::mt19937_64 rng(26);
  for (int t = 0; t < 500; ++t) {
    const auto tau = random_rynne(rng);
    const auto base = rynne_dimension(std::span<const double>(tau));
    std::vector<double> branches(tau.size());
    for (std::size_t j = 0; j < tau.size(); ++j) {
      double s = static_cast<double>(tau.size()) + 1;
      for (std::size_t i = j; i < tau.size(); ++i) s += tau[j] - tau[i];
      branches[j] = s / (1 + tau[j]);
    }
    for (std::size_t j = 0; j < branches.size(); ++j) {
      if (j + 1 == base.argmin_j) continue;
      auto bumped = branches;
      bumped[j] += 1e-9;
      CHECK(argmin_smallest(bumped) == base.argmin_j);
    }
  }
}

TEST_CASE("upper order examples") {
  std::vector<ApproxFunction> psi{
      [](std::uint64_t q) { return std::pow(static_cast<long double>(q), -2.0L); },
      [](std::uint64_t q) {
        const long double x = static_cast<long double>(q);
        return std::pow(x, -2.0L) * std::log(x);
      },
      [](std::uint64_t q) { return std::pow(static_cast<long double>(q), q % 2 ? -3.0L : -1.0L); },
  };
  const auto est = estimate_upper_order(psi, 1000000);
  for (const auto& s : est.samples[0]) CHECK(s.order == doctest::Approx(2).epsilon(1e-12));
  CHECK(est.v[0] == doctest::Approx(2));
  CHECK(est.v[1] > 1.8);
  CHECK(est.v[1] < 2.0);
  CHECK(est.v[2] == doctest::Approx(3).epsilon(1e-9));
  const auto ladder = upper_order_ladder(1000000);
  CHECK(ladder.front() == 1000);
  CHECK(ladder.back() == 1000000);
  CHECK(std::is_sorted(ladder.begin(), ladder.end()));
  std::vector<ApproxFunction> bad{[](std::uint64_t) { return 2.0L; }};
  CHECK_THROWS_AS(estimate_upper_order(bad, 1000), HypothesisError);
}
