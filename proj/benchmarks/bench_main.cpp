#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "plurigreen/cases.hpp"
#include "plurigreen/exponents.hpp"
#include "plurigreen/extremal.hpp"
#include "plurigreen/orthobasis.hpp"

using namespace plurigreen;

namespace {

SampleDesign circle_design(int m) {
  SampleDesign d;
  for (int i = 0; i < m; ++i) d.points.push_back({std::polar(1.0, 2.0 * std::numbers::pi * i / m)});
  d.origin = PointSet{d.points};
  return d;
}

void BM_PolyEval(benchmark::State& state) {
  const auto basis = monomial_basis(3, static_cast<int>(state.range(0)));
  MultiPoly p(3);
  for (std::size_t i = 0; i < basis.size(); ++i) p += basis[i] * Complex(1.0 / (1.0 + i), 0.5);
  const Point z{0.3, Complex(0.1, -0.7), 1.2};
  for (auto _ : state) benchmark::DoNotOptimize(p.eval(z));
}
BENCHMARK(BM_PolyEval)->Arg(4)->Arg(8)->Arg(16);

void BM_OrthoBasisGraded(benchmark::State& state) {
  const auto& c = find_case("sphere_polyhedron");
  const auto design = sample_compact(c.variety, c.compacts.at("E"), 2000, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(OrthoBasis::graded(design.points, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_OrthoBasisGraded)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ChristoffelEval(benchmark::State& state) {
  const auto& c = find_case("cusp");
  const auto design = sample_compact(c.variety, c.compacts.at("E"), 2000, 7);
  const auto est = christoffel_estimate(design, static_cast<int>(state.range(0)));
  const Point z{4.0, 8.0};
  for (auto _ : state) benchmark::DoNotOptimize(est(z));
}
BENCHMARK(BM_ChristoffelEval)->Arg(8)->Arg(16);

void BM_DiscreteSiciak(benchmark::State& state) {
  const auto design = circle_design(64);
  const auto basis = restricted_orthobasis(design, static_cast<int>(state.range(0)));
  const Point z{Complex(1.0, 1.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_discrete_siciak(basis, z, static_cast<double>(state.range(0))));
  }
}
BENCHMARK(BM_DiscreteSiciak)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExactExponents(benchmark::State& state) {
  const auto& c = find_case("parabola_exponent");
  for (auto _ : state) benchmark::DoNotOptimize(exact_exponents_variety(c.maps.at("f"), c.variety));
}
BENCHMARK(BM_ExactExponents);

void BM_GrowthExponent(benchmark::State& state) {
  const auto& c = find_case("parabola_exponent");
  const Schedule s = Schedule::geometric(1e2, 1e6, 8, 16, 7);
  for (auto _ : state) benchmark::DoNotOptimize(growth_exponent(c.maps.at("f"), c.variety, s));
}
BENCHMARK(BM_GrowthExponent)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
