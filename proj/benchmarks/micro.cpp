#include <benchmark/benchmark.h>

#include "symlra/catalecticant.hpp"
#include "symlra/families.hpp"
#include "symlra/numerics.hpp"
#include "symlra/pipeline.hpp"

using namespace symlra;

static void BM_CatalecticantSvd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = random_rank_r(n, 4, 5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(numerics::singular_values(build_cat(inst.tensor).matrix));
}
BENCHMARK(BM_CatalecticantSvd)->Arg(5)->Arg(10);

static void BM_SolveGenerating(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto inst = random_rank_r(10, 3, r, 2);
  const MonomialBasis basis = build_basis(10, 3, r);
  for (auto _ : state) benchmark::DoNotOptimize(solve_generating(inst.tensor, basis));
}
BENCHMARK(BM_SolveGenerating)->Arg(3)->Arg(8);

static void BM_CommutatorNormalEquations(benchmark::State& state) {
  const SymTensor f = waring8_tensor();
  const MonomialBasis basis = build_basis(4, 4, 8);
  const GenMatrix gen = solve_generating(f, basis);
  const CommutatorProblem prob(basis, gen);
  const RVector x = RVector::Ones(2 * prob.num_parameters());
  const RVector r = prob.residual_real(x);
  for (auto _ : state) benchmark::DoNotOptimize(prob.normal_equations(x, r));
}
BENCHMARK(BM_CommutatorNormalEquations);

static void BM_FitJacobian(benchmark::State& state) {
  const auto inst = random_rank_r(10, 3, 5, 3);
  const SymmetricFitProblem prob(inst.tensor, 5);
  const CVector z = prob.pack(inst.truth);
  for (auto _ : state) benchmark::DoNotOptimize(prob.jacobian(z));
}
BENCHMARK(BM_FitJacobian);

static void BM_Approximate(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const SymTensor f = perturb(random_rank_r(10, 3, r, 4).tensor, 1e-3, 5);
  ApproxOptions opts;
  opts.rank = r;
  for (auto _ : state) benchmark::DoNotOptimize(approximate(f, opts));
}
BENCHMARK(BM_Approximate)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
