#include <benchmark/benchmark.h>

#include "shiftop/analysis.hpp"
#include "shiftop/oracle.hpp"
#include "shiftop/spectrum.hpp"

using namespace shiftop;

namespace {

constexpr char const* kLift = "t + 0.1*sin(2*pi*t)";

OperatorSpec s1_operator(char const* a, char const* b) {
  return make_operator(CircleFunction(expr::parse(a)), CircleFunction(expr::parse(b)), Shift::from_lift(kLift),
                       space_indices(1.0 / 3.0, 0.5, true));
}

void BM_ParseDifferentiate(benchmark::State& state) {
  for (auto _ : state) {
    expr::Expr const e = expr::parse("(2 - 1.9*sin(pi*t))*cos(2*pi*t) + exp(sin(2*pi*t))/(2 + cos(4*pi*t))");
    benchmark::DoNotOptimize(expr::differentiate(e));
  }
}
BENCHMARK(BM_ParseDifferentiate);

void BM_FindZeros(benchmark::State& state) {
  expr::Expr const e = expr::parse("sin(6*pi*t) + 0.3*cos(2*pi*t)");
  expr::ZeroOptions opt;
  opt.cells = static_cast<int>(state.range(0));
  opt.periodic = true;
  for (auto _ : state) benchmark::DoNotOptimize(expr::find_zeros(e, 0.0, 1.0, opt));
}
BENCHMARK(BM_FindZeros)->Arg(1024)->Arg(4096);

void BM_PeriodicStructure(benchmark::State& state) {
  Shift const s = Shift::from_lift("t + 0.5 + 0.05*sin(4*pi*t)");
  for (auto _ : state) benchmark::DoNotOptimize(compute_periodic_structure(s));
}
BENCHMARK(BM_PeriodicStructure)->Unit(benchmark::kMillisecond);

void BM_Decide(benchmark::State& state) {
  OperatorSpec const op = s1_operator("(2 - 1.9*sin(pi*t))*cos(2*pi*t)", "cos(2*pi*t)");
  for (auto _ : state) benchmark::DoNotOptimize(decide(op));
}
BENCHMARK(BM_Decide)->Unit(benchmark::kMillisecond);

void BM_ShiftSpectrum(benchmark::State& state) {
  Shift const s = Shift::from_lift(kLift);
  PeriodicStructure const ps = compute_periodic_structure(s);
  CircleFunction const d(expr::parse("1 + 0.3*cos(2*pi*t)"));
  SpaceIndices const x = space_indices(1.0 / 3.0, 0.5, true);
  for (auto _ : state) benchmark::DoNotOptimize(shift_spectrum(d, s, ps, x, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ShiftSpectrum)->Arg(512)->Arg(4096);

void BM_NumericRadius(benchmark::State& state) {
  Shift const s = Shift::from_lift(kLift);
  CircleFunction const one(expr::parse("1"));
  GridOperator const g = weighted_shift_grid(one, s, static_cast<int>(state.range(0)), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_radius_numeric(g, 200));
}
BENCHMARK(BM_NumericRadius)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_SmallestSingularValue(benchmark::State& state) {
  GridOperator const g = discretize(s1_operator("2", "1"), static_cast<int>(state.range(0)), 2.0);
  Eigen::MatrixXd const m = g.matrix();
  for (auto _ : state) benchmark::DoNotOptimize(smallest_singular_value(m));
}
BENCHMARK(BM_SmallestSingularValue)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
