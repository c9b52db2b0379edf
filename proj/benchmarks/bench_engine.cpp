#include <benchmark/benchmark.h>

#include "kgtriage/engine/aggregate.hpp"
#include "kgtriage/engine/diagnose.hpp"
#include "synthetic.hpp"

namespace {

using namespace kgtriage;

void BM_Diagnose(benchmark::State& state) {
  auto g = bench::synthetic_graph(static_cast<int>(state.range(0)), 240, 6);
  engine::EngineConfig config;
  auto roster = engine::Roster::standard();
  engine::DiagnosticQuery q;
  q.query_id = "q";
  for (int i = 0; i < 3; ++i) q.symptom_ids.insert(kg::canonical_id(bench::symptom_label(i)));
  for (auto _ : state) benchmark::DoNotOptimize(engine::diagnose(q, config, roster, g));
}
BENCHMARK(BM_Diagnose)->Arg(12)->Arg(362)->Arg(2000);

void BM_Aggregate(benchmark::State& state) {
  std::vector<std::vector<engine::ScoredDiagnosis>> results(4);
  for (std::size_t a = 0; a < results.size(); ++a) {
    for (int k = 0; k < state.range(0); ++k) {
      results[a].push_back({"d" + std::to_string(k), (k + a) % 10 / 10.0});
    }
  }
  const std::vector<double> w(4, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(engine::aggregate(results, w));
}
BENCHMARK(BM_Aggregate)->Arg(5)->Arg(100);

}  // namespace
