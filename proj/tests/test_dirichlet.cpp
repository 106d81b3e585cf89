#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "support.hpp"
#include "wsa/benchmarks.hpp"
#include "wsa/dirichlet.hpp"
#include "wsa/error.hpp"

using namespace wsa;

namespace {

std::vector<Rational> exact_all(const std::vector<SnappedReal>& x) {
  std::vector<Rational> out;
  for (const auto& v : x) out.push_back(v.exact());
  return out;
}

}  // namespace

TEST_CASE("manifold constants examples") {
  const auto sq = manifold_constants(test::square_curve());
  CHECK(sq.C == 2);
  CHECK(sq.D == 2);
  const auto xy = manifold_constants(test::product_surface());
  CHECK(xy.C == 1);
  CHECK(xy.D == 1);
  const auto af = manifold_constants(test::affine_curve("3", "1"));
  CHECK(af.C == 0);
  CHECK(af.D == 3);
}

TEST_CASE("certified constants dominate grid samples") {
  for (const auto& name : benchmark_names()) {
    const auto M = benchmark_manifold(name);
    const auto cert = manifold_constants(M);
    const auto grid = manifold_constants_sampled(M, 33);
    CHECK(grid.C <= cert.C);
    CHECK(grid.D <= cert.D);
  }
}

TEST_CASE("Q0 worked values") {
  const auto M = benchmark_manifold("parabola");
  const auto tau = WeightVector::dependent_only({0.5});
  const std::vector<SnappedReal> half{snap_expression("0.5")};
  const std::vector<SnappedReal> root{snap_expression("sqrt(2)-1")};
  CHECK(compute_Q0(M, tau, half) == 65);
  CHECK(compute_Q0(M, tau, root) == 94);
}

TEST_CASE("Q0 for affine charts ignores curvature") {
  const auto M = test::affine_curve("3", "1");
  const auto tau = WeightVector::dependent_only({0.5});
  // min{1, r} = 0.25: 4 Q^{-1/2} < 1/4 iff Q > 256
  const std::vector<SnappedReal> x{snap_expression("1/4")};
  CHECK(compute_Q0(M, tau, x) == 257);
  CHECK(compute_Q0(M, tau, x, 0.5) == 65);
}

TEST_CASE("Q0 is the first admissible budget") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto M = benchmark_manifold("parabola");
    const double S = test::uniform(rng, 0.1, 0.8);
    const auto tau = WeightVector::dependent_only({S});
    const std::vector<SnappedReal> x = snap_all(std::vector<double>{test::uniform(rng, 0.2, 0.8)});
    const std::uint64_t Q0 = compute_Q0(M, tau, x);
    const double r = std::min({1.0, x[0].as_double(), 1.0 - x[0].as_double(), std::sqrt(1.0 / 4.0)});
    auto lhs = [&](double Q) { return 4.0 * std::pow(Q, -(1.0 - S)); };
    CHECK(lhs(static_cast<double>(Q0)) < r * (1 + 1e-9));
    if (Q0 > 1) CHECK(lhs(static_cast<double>(Q0 - 1)) >= r * (1 - 1e-9));
  }
}

TEST_CASE("hypotheses of the search") {
  const auto M = benchmark_manifold("parabola");
  const std::vector<SnappedReal> x{snap_expression("sqrt(2)-1")};
  CHECK_THROWS_AS(compute_Q0(M, WeightVector::dependent_only({1.0}), x), HypothesisError);
  CHECK_THROWS_AS(solve_dirichlet(M, WeightVector::dependent_only({0.5}), x, 93), HypothesisError);
  const std::vector<SnappedReal> edge{snap_expression("0")};
  CHECK_THROWS_AS(compute_Q0(M, WeightVector::dependent_only({0.5}), edge), HypothesisError);
}

TEST_CASE("parabola solution at Q = 100 equals the oracle minimum") {
  const auto M = benchmark_manifold("parabola");
  const auto tau = WeightVector::dependent_only({0.5});
  const std::vector<SnappedReal> x{snap_expression("sqrt(2)-1")};
  const auto sol = solve_dirichlet(M, tau, x, 100);
  const auto all = oracle::dirichlet_solutions(M, {0.5}, exact_all(x), 100);
  REQUIRE(!all.empty());
  CHECK(sol.point == all.front());
  CHECK(sol.point == RationalPoint({2, 1}, 4));
  CHECK(verify_solution(sol, M, tau, x).empty());
}

TEST_CASE("fast, reference and oracle solution sets agree") {
  std::mt19937_64 rng(32);
  for (const char* name : {"parabola", "paraboloid", "circle-chart", "affine"}) {
    const auto M = benchmark_manifold(name);
    for (int t = 0; t < 3; ++t) {
      std::vector<double> xd(M.d());
      for (std::size_t i = 0; i < M.d(); ++i) {
        xd[i] = test::uniform(rng, M.domain().lower()[i] + 0.1 * M.domain().width(i),
                              M.domain().upper()[i] - 0.1 * M.domain().width(i));
      }
      const auto x = snap_all(xd);
      const double S = test::uniform(rng, 0.2, 0.8);
      const auto tau = WeightVector::dependent_only({S});
      const std::uint64_t Q = 60 + rng() % 140;
      const auto fast = dirichlet_solutions(M, tau, x, Q);
      CHECK(fast == reference::dirichlet_solutions(M, tau, x, Q));
      CHECK(fast == oracle::dirichlet_solutions(M, {S}, exact_all(x), Q));
      const auto first = first_dirichlet_solution(M, tau, x, Q);
      CHECK(first.has_value() == !fast.empty());
      if (first) {
        CHECK(first->point == fast.front());
        CHECK(reference::first_dirichlet_solution(M, tau, x, Q)->point == first->point);
      }
    }
  }
}

TEST_CASE("paraboloid at Q = 10^4 equals the oracle minimum") {
  const auto M = benchmark_manifold("paraboloid");
  const auto tau = WeightVector::dependent_only({0.4});
  const std::vector<SnappedReal> x{snap_expression("sqrt(2)-1"), snap_expression("sqrt(3)-1")};
  const auto sol = solve_dirichlet(M, tau, x, 10000);
  const auto ref = reference::first_dirichlet_solution(M, tau, x, 10000);
  REQUIRE(ref.has_value());
  CHECK(sol.point == ref->point);
  const auto all = oracle::dirichlet_solutions(M, {0.4}, exact_all(x), 10000);
  REQUIRE(!all.empty());
  CHECK(all.front() == sol.point);
}

TEST_CASE("every returned solution passes its own check") {
  std::mt19937_64 rng(33);
  for (const auto& name : benchmark_names()) {
    const auto M = benchmark_manifold(name);
    std::vector<double> tau_v(M.m(), 0.5 / static_cast<double>(M.m()));
    const auto tau = WeightVector::dependent_only(tau_v);
    for (int t = 0; t < 10; ++t) {
      std::vector<double> xd(M.d());
      for (std::size_t i = 0; i < M.d(); ++i) {
        xd[i] = M.domain().lower()[i] + M.domain().width(i) * test::uniform(rng, 0.25, 0.75);
      }
      const auto x = snap_all(xd);
      const auto Q0 = compute_Q0(M, tau, x);
      for (std::uint64_t Q : {Q0, 2 * Q0, 10 * Q0}) {
        const auto sol = solve_dirichlet(M, tau, x, Q);
        CHECK(verify_solution(sol, M, tau, x).empty());
      }
    }
  }
}

TEST_CASE("infinitude sweep on an irrational point") {
  const auto M = benchmark_manifold("parabola");
  const auto tau = WeightVector::dependent_only({0.5});
  const std::vector<SnappedReal> x{snap_expression("sqrt(2)-1")};
  const std::vector<std::uint64_t> ladder{100, 1000, 10000, 100000};
  const auto sweep = infinitude_sweep(M, tau, x, ladder);
  CHECK(sweep.solutions.size() == 4);
  CHECK(sweep.distinct_q >= 3);
  const std::vector<std::uint64_t> one{100};
  const auto single = infinitude_sweep(M, tau, x, one);
  CHECK(single.solutions.size() == 1);
}

TEST_CASE("rational point makes the sweep stagnate") {
  const auto M = benchmark_manifold("parabola");
  const auto tau = WeightVector::dependent_only({0.5});
  const std::vector<SnappedReal> x{snap_expression("1/2")};
  const std::vector<std::uint64_t> ladder{1000, 10000, 100000};
  CHECK_THROWS_AS(infinitude_sweep(M, tau, x, ladder), TheoremViolation);
  const auto sol = solve_dirichlet(M, tau, x, 1000);
  CHECK(sol.point.q % 2 == 0);
  CHECK(sol.independent_errors[0] == 0);
}

TEST_CASE("best independent error does not grow as the budget doubles") {
  std::mt19937_64 rng(34);
  const auto M = benchmark_manifold("paraboloid");
  const auto tau = WeightVector::dependent_only({0.3});
  for (int t = 0; t < 5; ++t) {
    const auto x = snap_all(std::vector<double>{test::uniform(rng, 0.3, 0.7), test::uniform(rng, 0.3, 0.7)});
    std::uint64_t Q = compute_Q0(M, tau, x);
    double best = INFINITY;
    for (int k = 0; k < 5; ++k, Q *= 2) {
      for (const auto& p : dirichlet_solutions(M, tau, x, Q)) {
        double err = 0;
        for (std::size_t i = 0; i < 2; ++i) {
          err = std::max(err, std::abs(x[i].as_double() - static_cast<double>(p.p[i]) / static_cast<double>(p.q)));
        }
        CHECK(err <= best + 1e-15);
        best = std::min(best, err);
        break;
      }
    }
  }
}
