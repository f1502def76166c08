// Kernel assembly and seminorm evaluation: OpenMP kernels against the serial reference.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "fracperim/energy.hpp"
#include "fracperim/instances.hpp"
#include "fracperim/solver.hpp"

using namespace fracperim;

namespace {

std::shared_ptr<const Space> planar(std::size_t n) {
  std::mt19937_64 rng(n);
  return std::make_shared<const Space>(random_planar(n, rng));
}

void BM_AssembleParallel(benchmark::State& st) {
  const auto sp = planar(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(assemble(sp, 0.5));
  st.SetComplexityN(st.range(0));
}

void BM_AssembleReference(benchmark::State& st) {
  const auto sp = planar(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(assemble_reference(sp, 0.5));
  st.SetComplexityN(st.range(0));
}

void BM_SeminormBatch(benchmark::State& st) {
  const auto sp = planar(400);
  const Kernel k = assemble(sp, 0.5);
  std::mt19937_64 rng(1);
  std::vector<Field> fields(static_cast<std::size_t>(st.range(0)), Field(sp->size()));
  for (auto& f : fields)
    for (auto& v : f) v = uniform01(rng);
  const SetMask all = SetMask::full(sp->size());
  for (auto _ : st) benchmark::DoNotOptimize(seminorm_batch(k, fields, all));
}

void BM_SeminormLoop(benchmark::State& st) {
  const auto sp = planar(400);
  const Kernel k = assemble(sp, 0.5);
  std::mt19937_64 rng(1);
  std::vector<Field> fields(static_cast<std::size_t>(st.range(0)), Field(sp->size()));
  for (auto& f : fields)
    for (auto& v : f) v = uniform01(rng);
  const SetMask all = SetMask::full(sp->size());
  for (auto _ : st)
    for (const auto& f : fields) benchmark::DoNotOptimize(seminorm(k, f, all));
}

void BM_CondenserCut(benchmark::State& st) {
  const auto sp = planar(static_cast<std::size_t>(st.range(0)));
  const Kernel k = assemble(sp, 0.5);
  SetMask A(sp->size()), F(sp->size());
  A.set(0);
  for (PointId x = 0; x < sp->size() / 2; ++x) F.set(x);
  for (auto _ : st) benchmark::DoNotOptimize(condenser_capacity(k, A, F));
}

}  // namespace

BENCHMARK(BM_AssembleParallel)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK(BM_AssembleReference)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK(BM_SeminormBatch)->Arg(64);
BENCHMARK(BM_SeminormLoop)->Arg(64);
BENCHMARK(BM_CondenserCut)->Arg(100)->Arg(300);

BENCHMARK_MAIN();
