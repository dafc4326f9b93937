// Parallel kernels against their serial references.  Thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "hrl/corpus.hpp"
#include "hrl/forms.hpp"
#include "hrl/functionals.hpp"
#include "hrl/quotients.hpp"

namespace {

hrl::FormSpec hardy_rellich(int dim, int ell) {
  hrl::FormSpec spec;
  spec.problem = hrl::Problem::HardyRellich;
  spec.params = {dim, 2.0, 0.0};
  spec.ell = ell;
  return spec;
}

void BM_AssembleForms(benchmark::State& state) {
  const auto breaks = hrl::log_uniform_breaks(1e-3, 1e3, static_cast<int>(state.range(0)) + 5);
  const auto spec = hardy_rellich(3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hrl::assemble_forms(spec, breaks, 5));
}

void BM_AssembleFormsReference(benchmark::State& state) {
  const auto breaks = hrl::log_uniform_breaks(1e-3, 1e3, static_cast<int>(state.range(0)) + 5);
  const auto spec = hardy_rellich(3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hrl::assemble_forms_reference(spec, breaks, 5));
}

hrl::TestField field(int dim) {
  hrl::CorpusSpec spec;
  spec.seed = 5;
  spec.count = 1;
  spec.knots = 40;
  spec.family = hrl::Family::RandomSeparable;
  spec.params = hrl::SpaceParams::critical(dim);
  return hrl::generate(spec).front();
}

void BM_FieldEvaluator(benchmark::State& state) {
  const auto u = field(static_cast<int>(state.range(0)));
  const hrl::FieldEvaluator eval(u);
  const auto& c = u.profile().coefficients();
  for (auto _ : state) benchmark::DoNotOptimize(eval.evaluate(c));
}

void BM_EvaluateReference(benchmark::State& state) {
  const auto u = field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hrl::evaluate_reference(u));
}

}  // namespace

BENCHMARK(BM_AssembleForms)->Arg(120)->Arg(240)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleFormsReference)->Arg(120)->Arg(240)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldEvaluator)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateReference)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
