#include <benchmark/benchmark.h>

#include "kgtriage/kg/snapshot.hpp"
#include "synthetic.hpp"

namespace {

using namespace kgtriage;

void BM_Snapshot(benchmark::State& state) {
  auto g = bench::synthetic_graph(static_cast<int>(state.range(0)), 240, 6);
  for (auto _ : state) benchmark::DoNotOptimize(kg::snapshot(g));
}
BENCHMARK(BM_Snapshot)->Arg(362)->Unit(benchmark::kMillisecond);

void BM_Load(benchmark::State& state) {
  auto text = kg::snapshot(bench::synthetic_graph(static_cast<int>(state.range(0)), 240, 6));
  for (auto _ : state) benchmark::DoNotOptimize(kg::load(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Load)->Arg(362)->Unit(benchmark::kMillisecond);

void BM_SymptomsOf(benchmark::State& state) {
  auto g = bench::synthetic_graph(362, 240, 6);
  const std::set<kg::Status> statuses{kg::Status::approved};
  auto id = kg::canonical_id(bench::disease_label(7));
  for (auto _ : state) benchmark::DoNotOptimize(kg::symptoms_of(g, id, statuses));
}
BENCHMARK(BM_SymptomsOf);

}  // namespace
