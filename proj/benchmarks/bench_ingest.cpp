#include <benchmark/benchmark.h>

#include "kgtriage/ingest/lexicon.hpp"
#include "kgtriage/ingest/patterns.hpp"
#include "kgtriage/ingest/pipeline.hpp"
#include "kgtriage/ingest/segment.hpp"
#include "synthetic.hpp"

namespace {

using namespace kgtriage;

void BM_Segment(benchmark::State& state) {
  ingest::Document doc{"d", bench::synthetic_text(50, 50, static_cast<int>(state.range(0))), ""};
  for (auto _ : state) benchmark::DoNotOptimize(ingest::segment_document(doc, 1000));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * doc.text.size()));
}
BENCHMARK(BM_Segment)->Arg(100)->Arg(1000);

void BM_LexiconMatch(benchmark::State& state) {
  auto lex = bench::synthetic_lexicon(static_cast<int>(state.range(0)), 200);
  auto text = bench::synthetic_text(static_cast<int>(state.range(0)), 200, 20);
  for (auto _ : state) benchmark::DoNotOptimize(lex.match(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_LexiconMatch)->Arg(50)->Arg(400)->Arg(5000);

void BM_IngestCorpus(benchmark::State& state) {
  const int diseases = static_cast<int>(state.range(0));
  auto lex = bench::synthetic_lexicon(diseases, 240);
  std::vector<ingest::RelationPattern> patterns{
      ingest::RelationPattern::make("presents", kg::Predicate::Kind::has_symptom, "{1} presents with {2}", 6)};
  std::vector<ingest::Document> docs;
  for (int i = 0; i < diseases; ++i) {
    docs.push_back({"doc-" + std::to_string(i),
                    bench::disease_label(i) + " presents with " + bench::symptom_label(i % 240) + ".", ""});
  }
  for (auto _ : state) {
    kg::KnowledgeGraph g;
    benchmark::DoNotOptimize(ingest::ingest_corpus(docs, lex, patterns, g));
  }
}
BENCHMARK(BM_IngestCorpus)->Arg(362)->Unit(benchmark::kMillisecond);

}  // namespace
