#include "kgtriage/engine/query.hpp"

namespace kgtriage::engine {

ingest::Lexicon symptom_lexicon(const kg::KnowledgeGraph& graph, const ingest::Lexicon* extra) {
  ingest::Lexicon lex;
  for (const auto& [id, e] : graph.entities()) {
    if (e.category != kg::Category::symptom) continue;
    ingest::LexiconEntry entry{e.label, e.category, e.specialty};
    lex.add(e.label, entry);
    lex.add(e.id, entry);
    for (const auto& a : e.aliases) lex.add(a, entry);
  }
  if (extra != nullptr) {
    for (const auto& [surface, entry] : extra->entries()) {
      if (entry.category == kg::Category::symptom) lex.add(surface, entry);
    }
  }
  return lex;
}

DiagnosticQuery make_query(std::string query_id, std::string raw_text,
                           const ingest::Lexicon& lexicon, const kg::KnowledgeGraph& graph) {
  DiagnosticQuery q;
  q.query_id = std::move(query_id);
  q.raw_text = std::move(raw_text);
  for (const auto& m : lexicon.match(q.raw_text)) {
    auto id = graph.resolve(m.label);
    if (!id) continue;
    if (graph.entity(*id).category == kg::Category::symptom) q.symptom_ids.insert(*id);
  }
  return q;
}

}  // namespace kgtriage::engine
