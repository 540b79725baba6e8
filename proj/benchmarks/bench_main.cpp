#include <benchmark/benchmark.h>

#include "qccd/binary_matrix.hpp"
#include "qccd/codes.hpp"
#include "qccd/cyclone.hpp"
#include "qccd/experiment.hpp"

namespace {

void BM_Gf2Rank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = qccd::random_check_matrix(n, n, 0.5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(qccd::gf2_rank(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gf2Rank)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_HgpConstruct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qccd::code_preset("hgp625"));
}
BENCHMARK(BM_HgpConstruct)->Unit(benchmark::kMillisecond);

void run_preset(benchmark::State& state, const char* code, qccd::Layout layout, qccd::Mode mode) {
  const auto c = qccd::code_preset(code);
  qccd::ExperimentSpec spec;
  spec.code = code;
  spec.layout = layout;
  spec.mode = mode;
  for (auto _ : state) {
    auto r = qccd::run_experiment(c, spec, {});
    benchmark::DoNotOptimize(r.schedule.stats.total_time);
  }
}

void BM_EjfGridHgp225(benchmark::State& state) { run_preset(state, "hgp225", qccd::Layout::Grid, qccd::Mode::Ejf); }
BENCHMARK(BM_EjfGridHgp225)->Unit(benchmark::kMillisecond);

void BM_DynamicGridBb144(benchmark::State& state) { run_preset(state, "bb144", qccd::Layout::Grid, qccd::Mode::Dynamic); }
BENCHMARK(BM_DynamicGridBb144)->Unit(benchmark::kMillisecond);

void BM_CycloneRing(benchmark::State& state) {
  const char* names[] = {"hgp225", "bb144", "hgp625"};
  run_preset(state, names[state.range(0)], qccd::Layout::Ring, qccd::Mode::Cyclone);
  state.SetLabel(names[state.range(0)]);
}
BENCHMARK(BM_CycloneRing)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
