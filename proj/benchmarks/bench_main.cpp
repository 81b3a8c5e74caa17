#include <benchmark/benchmark.h>

#include "lattrace/verify.hpp"

using namespace lattrace;

namespace {

void BM_EtaEval(benchmark::State& state) {
  const Complex tau(0.1, 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eta_eval(tau));
}
BENCHMARK(BM_EtaEval)->Arg(1)->Arg(2)->Arg(4);

void BM_EtaSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dedekind_eta(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EtaSeries)->Arg(50)->Arg(200);

void BM_ZTrace(benchmark::State& state) {
  const EvenLattice L = state.range(0) == 1 ? z2x_lattice() : a2_lattice();
  const ModuleRef W{L, dual_coset_reps(L)[1]};
  const ComplexVector a(static_cast<std::size_t>(L.rank()), Complex(0.2, -0.1));
  const ComplexVector b(static_cast<std::size_t>(L.rank()), Complex(-0.1, 0.15));
  const TracePoint p{a, b, Complex(0.2, 0.8)};
  for (auto _ : state) benchmark::DoNotOptimize(z_trace(W, p));
}
BENCHMARK(BM_ZTrace)->Arg(1)->Arg(2);

void BM_FitS(benchmark::State& state) {
  const EvenLattice L = state.range(0) == 1 ? z2x_lattice() : a2_lattice();
  const auto pts = sample_points(L.rank(), UnimodularMatrix::S(), 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fit_transition(L, UnimodularMatrix::S(), pts));
}
BENCHMARK(BM_FitS)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_BuildBasis(benchmark::State& state) {
  const EvenLattice L = a2_lattice();
  const ModuleRef W{L, dual_coset_reps(L)[0]};
  for (auto _ : state) benchmark::DoNotOptimize(build_basis(W, Rational(state.range(0))));
}
BENCHMARK(BM_BuildBasis)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TraceRecursion(benchmark::State& state) {
  const EvenLattice L = z2x_lattice();
  const ModuleRef W{L, dual_coset_reps(L)[0]};
  const ComplexVector x{Complex(0.5, 0.0)};
  for (auto _ : state) benchmark::DoNotOptimize(verify_trace_recursion(W, {x, x}, 4, 6));
}
BENCHMARK(BM_TraceRecursion)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
