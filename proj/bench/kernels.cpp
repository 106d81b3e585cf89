// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "wsa/benchmarks.hpp"
#include "wsa/dirichlet.hpp"
#include "wsa/enumeration.hpp"
#include "wsa/fractal.hpp"

namespace {

using namespace wsa;

const MongeManifold& paraboloid() {
  static const MongeManifold M = benchmark_manifold("paraboloid");
  return M;
}

const PointFamily& parabola_family() {
  static const PointFamily fam =
      enumerate_points(benchmark_manifold("parabola"), WeightVector::dependent_only({0.5}), 1, 3000);
  return fam;
}

RectSet random_squares(std::size_t count) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0, 1), hw(1e-4, 2e-2);
  RectSet out(2);
  for (std::size_t i = 0; i < count; ++i) {
    const double c[2] = {pos(rng), pos(rng)}, h[2] = {hw(rng), hw(rng)};
    out.push_back(c, h);
  }
  return out;
}

void BM_dirichlet_scan(benchmark::State& state) {
  const auto tau = WeightVector::dependent_only({0.6});
  const auto x = snap_all(std::vector<double>{0.414213562373, 0.732050807569});
  const auto Q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_solutions(paraboloid(), tau, x, Q));
}

void BM_dirichlet_scan_reference(benchmark::State& state) {
  const auto tau = WeightVector::dependent_only({0.6});
  const auto x = snap_all(std::vector<double>{0.414213562373, 0.732050807569});
  const auto Q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::dirichlet_solutions(paraboloid(), tau, x, Q));
}

void BM_enumerate(benchmark::State& state) {
  const auto tau = WeightVector::dependent_only({0.5});
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_points(paraboloid(), tau, 1, state.range(0)));
}

void BM_enumerate_reference(benchmark::State& state) {
  const auto tau = WeightVector::dependent_only({0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reference::enumerate_points(paraboloid(), tau, 1, state.range(0), DependentBound::full));
  }
}

void BM_coverage(benchmark::State& state) {
  const auto balls = build_balls(parabola_family(), 0.05);
  const DomainBox box = DomainBox::unit(1);
  for (auto _ : state) benchmark::DoNotOptimize(coverage(balls, box, static_cast<std::uint64_t>(state.range(0))));
}

void BM_coverage_reference(benchmark::State& state) {
  const auto balls = build_balls(parabola_family(), 0.05);
  const DomainBox box = DomainBox::unit(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::coverage(balls, box, static_cast<std::uint64_t>(state.range(0))));
  }
}

void BM_box_count(benchmark::State& state) {
  const auto rects = random_squares(2000);
  for (auto _ : state) benchmark::DoNotOptimize(box_count(rects, DomainBox::unit(2), static_cast<int>(state.range(0))));
}

void BM_box_count_reference(benchmark::State& state) {
  const auto rects = random_squares(2000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::box_count(rects, DomainBox::unit(2), static_cast<int>(state.range(0))));
  }
}

}  // namespace

BENCHMARK(BM_dirichlet_scan)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dirichlet_scan_reference)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_reference)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_coverage)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_coverage_reference)->Arg(1 << 12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_box_count)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_box_count_reference)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
