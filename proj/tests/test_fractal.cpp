#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "wsa/benchmarks.hpp"
#include "wsa/enumeration.hpp"
#include "wsa/error.hpp"
#include "wsa/fractal.hpp"

using namespace wsa;

namespace {

RectSet cantor_rects(int depth) {
  RectSet out(1);
  for (const auto& [a, b] : oracle::cantor_intervals(depth)) {
    const double c = to_double(Rational((a + b) / 2)), h = to_double(Rational((b - a) / 2));
    out.push_back(std::span<const double>(&c, 1), std::span<const double>(&h, 1));
  }
  return out;
}

RectSet random_rects(std::mt19937_64& rng, std::size_t dim, std::size_t count, double max_hw) {
  RectSet out(dim);
  std::vector<double> c(dim), h(dim);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      c[k] = test::uniform(rng, -0.1, 1.1);
      h[k] = test::uniform(rng, 1e-5, max_hw);
    }
    out.push_back(c, h);
  }
  return out;
}

}  // namespace

TEST_CASE("coverage examples") {
  const DomainBox box = DomainBox::unit(2);
  RectSet all(2);
  all.push_back(Hyperrectangle({0.5, 0.5}, {1, 1}));
  CHECK(coverage(all, box, 64).fraction == 1.0);
  CHECK(coverage(RectSet(2), box, 64).fraction == 0.0);
  RectSet half(1);
  half.push_back(Hyperrectangle({0.25}, {0.25}));
  CHECK(coverage(half, DomainBox::unit(1), 1000).fraction == doctest::Approx(0.5));
}

TEST_CASE("coverage matches the exact union length in one dimension") {
  const auto M = benchmark_manifold("parabola");
  const auto fam = enumerate_points(M, WeightVector::dependent_only({0.5}), 1, 200);
  for (double k : {0.05, 0.2, 4.0}) {
    const auto balls = build_balls(fam, k);
    std::vector<std::pair<Rational, Rational>> intervals;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const Rational c = to_rational(balls.center(i)[0]), h = to_rational(balls.half_widths(i)[0]);
      intervals.emplace_back(c - h, c + h);
    }
    const double exact = to_double(oracle::union_length(intervals, 0, 1));
    CHECK(std::abs(coverage(balls, M.domain(), 4096).fraction - exact) <= 0.02);
  }
}

TEST_CASE("coverage equals the brute-force grid") {
  std::mt19937_64 rng(51);
  for (std::size_t dim : {1u, 2u, 3u}) {
    for (int t = 0; t < 4; ++t) {
      const auto rects = random_rects(rng, dim, 40, 0.2);
      const DomainBox box = DomainBox::unit(dim);
      const std::uint64_t res = dim == 3 ? 40 : 300;
      const auto fast = coverage(rects, box, res);
      const auto slow = reference::coverage(rects, box, res);
      CHECK(fast.covered == slow.covered);
      CHECK(fast.total == slow.total);
    }
  }
}

TEST_CASE("coverage is monotone in the window") {
  for (const char* name : {"parabola", "circle-chart", "paraboloid"}) {
    const auto M = benchmark_manifold(name);
    const auto fam = enumerate_points(M, WeightVector::dependent_only({0.5}), 1, M.d() == 1 ? 2000 : 120);
    double prev = 0;
    for (std::int64_t Q = 10; Q <= fam.q_max(); Q *= 3) {
      const double f = coverage(build_balls(fam.truncated(Q), 0.05), M.domain(), M.d() == 1 ? 65536 : 512).fraction;
      CHECK(f >= prev);
      prev = f;
    }
  }
}

TEST_CASE("coverage grows strictly along a decade ladder") {
  const auto M = benchmark_manifold("parabola");
  const auto fam = enumerate_points(M, WeightVector::dependent_only({0.5}), 1, 10000);
  std::vector<double> f;
  for (std::int64_t Q : {10, 100, 1000, 10000}) {
    f.push_back(coverage(build_balls(fam.truncated(Q), 0.05), M.domain(), 1 << 16).fraction);
  }
  bool strict = false;
  for (std::size_t i = 1; i < f.size(); ++i) {
    CHECK(f[i] >= f[i - 1]);
    strict = strict || f[i] > f[i - 1];
  }
  CHECK(strict);
}

TEST_CASE("constant dilation barely moves the largest-window coverage") {
  for (const char* name : {"parabola", "circle-chart", "affine"}) {
    const auto M = benchmark_manifold(name);
    const auto fam = enumerate_points(M, WeightVector::dependent_only({0.5}), 1, 10000);
    const auto balls = build_balls(fam, 4.0);
    const double base = coverage(balls, M.domain(), 1 << 16).fraction;
    for (double c : {0.5, 2.0}) {
      CHECK(std::abs(coverage(balls.scaled(c), M.domain(), 1 << 16).fraction - base) < 0.1);
    }
  }
}

TEST_CASE("grid cap") {
  CHECK_THROWS_AS(coverage(RectSet(3), DomainBox::unit(3), 1 << 12), CapExceeded);
}

TEST_CASE("box count of a point, the full box and the empty family") {
  RectSet point(1);
  point.push_back(Hyperrectangle({0.3}, {1e-12}));
  const auto tp = box_count(point, DomainBox::unit(1), 20);
  for (const auto& row : tp.rows) CHECK(row.count == 1);
  CHECK(std::abs(tp.slope) < 1e-9);

  for (std::size_t d : {1u, 2u}) {
    RectSet full(d);
    full.push_back(Hyperrectangle(std::vector<double>(d, 0.5), std::vector<double>(d, 0.6)));
    const auto tf = box_count(full, DomainBox::unit(d), d == 1 ? 16 : 10);
    for (const auto& row : tf.rows) CHECK(row.count == std::uint64_t{1} << (row.depth * static_cast<int>(d)));
    CHECK(tf.slope == doctest::Approx(static_cast<double>(d)).epsilon(0.02));
    CHECK(tf.saturated);
  }

  CHECK_THROWS_AS(box_count(RectSet(1), DomainBox::unit(1), 10), HypothesisError);
}

TEST_CASE("cantor calibration") {
  const auto t = box_count(cantor_rects(12), DomainBox::unit(1), 18);
  CHECK(std::abs(t.slope - std::log(2.0) / std::log(3.0)) <= 0.05);
  CHECK(t.residual < 0.1);
}

TEST_CASE("box counts are monotone, bounded and match the bitmap reference") {
  std::mt19937_64 rng(52);
  for (std::size_t dim : {1u, 2u, 3u}) {
    const int depth = dim == 3 ? 6 : 10;
    for (int t = 0; t < 3; ++t) {
      const auto rects = random_rects(rng, dim, 60, 0.05);
      const DomainBox box = DomainBox::unit(dim);
      const auto fast = box_count(rects, box, depth);
      const auto slow = reference::box_count(rects, box, depth);
      REQUIRE(fast.rows.size() == slow.rows.size());
      for (std::size_t i = 0; i < fast.rows.size(); ++i) {
        CHECK(fast.rows[i].count == slow.rows[i].count);
        CHECK(fast.rows[i].delta == std::ldexp(1.0, -fast.rows[i].depth));
        CHECK(fast.rows[i].count <= std::uint64_t{1} << (fast.rows[i].depth * static_cast<int>(dim)));
        if (i > 0) CHECK(fast.rows[i].count >= fast.rows[i - 1].count);
      }
      CHECK(fast.slope == doctest::Approx(slow.slope));
    }
  }
}

TEST_CASE("fit window override") {
  const auto rects = cantor_rects(10);
  const auto t = box_count(rects, DomainBox::unit(1), 16, FitWindow{8, 14});
  CHECK(t.fit_lo == 8);
  CHECK(t.fit_hi == 14);
  CHECK(std::abs(t.slope - std::log(2.0) / std::log(3.0)) <= 0.05);
  CHECK_THROWS_AS(box_count(rects, DomainBox::unit(1), kMaxDepth + 1), HypothesisError);
}

TEST_CASE("dimension experiment on the parabola") {
  const auto M = benchmark_manifold("parabola");
  const auto ex = dimension_experiment(M, WeightVector({0.8, 0.3}, 1), {100, 1000}, 12);
  CHECK(ex.formula_value == doctest::Approx(1.7 / 1.8));
  CHECK(ex.caveat == kBoxCountCaveat);
  REQUIRE(ex.probes.size() == 2);
  CHECK(ex.probes[0].rectangles <= ex.probes[1].rectangles);
  CHECK(ex.k > 0);
  CHECK(ex.k <= 1);
  for (const auto& p : ex.probes) {
    CHECK(p.table.slope >= 0);
    CHECK(p.table.slope <= 1 + 1e-9);
  }
}

TEST_CASE("affine dimension probe approaches the full line") {
  // the largest dependent weight the hypotheses allow with tau_1 = 1
  const auto M = benchmark_manifold("affine");
  const auto ex = dimension_experiment(M, WeightVector({1, 0.9}, 1), {1000}, 12);
  CHECK(ex.probes.back().table.slope == doctest::Approx(1).epsilon(0.05));
}

TEST_CASE("a single denominator gives the two corner rectangles") {
  const auto M = benchmark_manifold("parabola");
  const auto ex = dimension_experiment(M, WeightVector({1.5, 0.95}, 1), {1}, 10);
  const auto& probe = ex.probes.back();
  CHECK(probe.rectangles == 2);
  CHECK(probe.table.rows.front().count == 1);
  for (std::size_t i = 1; i < probe.table.rows.size(); ++i) {
    CHECK(probe.table.rows[i].count >= probe.table.rows[i - 1].count);
  }
}
