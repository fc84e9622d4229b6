#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "ahgeom/axiom.hpp"
#include "ahgeom/curvature.hpp"
#include "ahgeom/expr.hpp"
#include "ahgeom/hermitian.hpp"
#include "ahgeom/models.hpp"

namespace {

void BM_ExprDifferentiate(benchmark::State& state) {
  const std::vector<std::string> symbols{"x", "y", "z"};
  const ahg::Expr e = ahg::parse("4*(1 + x^2 + y^2)^(-2)*sin(x*y) + exp(z)/(1 + z^2)", symbols);
  for (auto _ : state) {
    ahg::Expr d = ahg::differentiate(ahg::differentiate(e, 0), 1);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_ExprDifferentiate);

void BM_PointData(benchmark::State& state) {
  const ahg::ManifoldChart fs = ahg::instantiate("fubini_study", {{"m", static_cast<double>(state.range(0))}});
  const std::vector<double> p(fs.dim(), 0.2);
  for (auto _ : state) {
    ahg::PointData d = ahg::point_data(fs, p, true);
    benchmark::DoNotOptimize(d.scalar);
  }
}
BENCHMARK(BM_PointData)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_NablaJ(benchmark::State& state) {
  const ahg::ManifoldChart s6 = ahg::instantiate("s6_nearly_kahler");
  const auto p = s6.default_point();
  for (auto _ : state) {
    ahg::FrameSampler s(0, 6);
    benchmark::DoNotOptimize(ahg::nabla_j_residuals(s6, p, s));
  }
}
BENCHMARK(BM_NablaJ)->Unit(benchmark::kMicrosecond);

void BM_SchoutenNullspace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    ahg::FrameSampler s(0, n);
    benchmark::DoNotOptimize(ahg::schouten_nullspace_verify(n, s).nullspace_dim);
  }
}
BENCHMARK(BM_SchoutenNullspace)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_TheoremNullspace(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    ahg::FrameSampler s(0, 2 * m);
    benchmark::DoNotOptimize(ahg::theorem_nullspace_verify(m, s).nullspace_dim);
  }
}
BENCHMARK(BM_TheoremNullspace)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
