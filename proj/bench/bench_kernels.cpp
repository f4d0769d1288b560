// Parallel kernels against their serial reference paths. Arg 0 = serial,
// 1 = parallel (OpenMP, worker count from CMS_THREADS).

#include <benchmark/benchmark.h>

#include "cms/dunkl_infinity.hpp"
#include "cms/parallel.hpp"
#include "cms/weyl.hpp"

using namespace cms;

namespace {

void BM_IntegralTable(benchmark::State& state) {
  InfDunkl op(Family::TrigA, symbolic_params(Family::TrigA));
  auto basis = monomial_basis(7, 7);
  for (auto _ : state) {
    IntegralTable t(op, 3);
    t.precompute(basis, state.range(0) != 0);
    benchmark::DoNotOptimize(t.on_monomial(basis.back()));
  }
  state.counters["monomials"] = static_cast<double>(basis.size());
}

void BM_CommutatorAtInfinity(benchmark::State& state) {
  InfDunkl op(Family::RatA, symbolic_params(Family::RatA));
  for (auto _ : state) benchmark::DoNotOptimize(commutator_on_basis(op, 2, 3, 5, 5, state.range(0) != 0));
}

void BM_LaxEntries(benchmark::State& state) {
  Params pr = symbolic_params(Family::TrigA);
  for (auto _ : state) benchmark::DoNotOptimize(lax_check(Family::TrigA, pr, Parity{2, 1}, state.range(0) != 0));
}

void BM_MoserPower(benchmark::State& state) {
  Params pr = symbolic_params(Family::RatB);
  OpMatrix L = moser_L(Family::RatB, pr, Parity{1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(L.pow(4, state.range(0) != 0));
}

void BM_BasisCommutator(benchmark::State& state) {
  Params pr = symbolic_params(Family::RatB);
  Parity par{1, 1};
  WeylOp I = moser_integral(Family::RatB, pr, par, 1, false);
  WeylOp H = hamiltonian(Family::RatB, pr, par, false);
  for (auto _ : state) benchmark::DoNotOptimize(commute_on_basis(I, H, 4, false, state.range(0) != 0));
}

}  // namespace

BENCHMARK(BM_IntegralTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutatorAtInfinity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LaxEntries)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MoserPower)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BasisCommutator)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_workers_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
