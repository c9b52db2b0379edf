#include "kgtriage/ingest/pipeline.hpp"

#include <map>
#include <set>

namespace kgtriage::ingest {
namespace {

std::string upsert_mention(kg::KnowledgeGraph& graph, const Mention& m, const Lexicon& lexicon) {
  std::set<std::string> aliases;
  auto folded = fold_surface(m.surface);
  if (kg::canonical_id(folded) != kg::canonical_id(m.label) && lexicon.find(folded)) {
    aliases.insert(folded);
  }
  return graph.upsert_entity(m.label, m.category, m.specialty, aliases);
}

// Entity for an augmenter label: existing entity, else the augmenter's own
// mention of it, else an uncategorised general entity.
std::string resolve_augmented(kg::KnowledgeGraph& graph, const std::string& label,
                              const std::vector<Mention>& mentions) {
  if (auto id = graph.resolve(label)) return *id;
  auto key = kg::canonical_id(label);
  for (const auto& m : mentions) {
    if (kg::canonical_id(m.label) == key) {
      return graph.upsert_entity(m.label, m.category, m.specialty);
    }
  }
  return graph.upsert_entity(label, kg::Category::other, kg::Specialty::general);
}

}  // namespace

DocumentExtraction extract_document(const Document& doc, const Lexicon& lexicon,
                                    const std::vector<RelationPattern>& patterns,
                                    const IngestOptions& options) {
  DocumentExtraction out;
  out.chunks = segment_document(doc, options.max_chunk_chars);
  for (const auto& chunk : out.chunks) {
    ExtractionCandidate lexical;
    lexical.mentions = extract_entities(chunk, lexicon);
    lexical.triples = extract_relations(chunk, lexical.mentions, patterns);
    out.lexical.push_back(std::move(lexical));

    if (options.augmenter == nullptr) continue;
    try {
      auto result = augment(chunk, options.augmenter);
      out.augmenter_dropped += result.dropped;
      out.augmented.push_back(std::move(result.candidate));
    } catch (const Error& e) {
      out.warnings.push_back({doc.id, e.code(), e.what()});
      out.augmented.emplace_back();
    }
  }
  return out;
}

IngestReport ingest_corpus(const std::vector<Document>& docs, const Lexicon& lexicon,
                           const std::vector<RelationPattern>& patterns, kg::KnowledgeGraph& graph,
                           const IngestOptions& options) {
  IngestReport report;
  const auto entities_before = graph.entities().size();
  const auto relations_before = graph.relations().size();

  for (const auto& doc : docs) {
    DocumentExtraction ex;
    try {
      ex = extract_document(doc, lexicon, patterns, options);
    } catch (const Error& e) {
      report.errors.push_back({doc.id, e.code(), e.what()});
      continue;
    }
    ++report.documents;
    report.chunks += ex.chunks.size();
    report.augmenter_dropped += ex.augmenter_dropped;
    for (auto& w : ex.warnings) {
      ++report.augmenter_failures;
      report.errors.push_back(std::move(w));
    }

    try {
      for (std::size_t i = 0; i < ex.chunks.size(); ++i) {
        const auto& chunk = ex.chunks[i];
        const auto& lexical = ex.lexical[i];
        report.mentions += lexical.mentions.size();
        std::map<std::string, std::string> ids;  // mention label -> entity id
        for (const auto& m : lexical.mentions) ids[m.label] = upsert_mention(graph, m, lexicon);
        for (const auto& t : lexical.triples) {
          ++report.triples_extracted;
          const auto& s = ids.at(t.subject);
          const auto& o = ids.at(t.object);
          if (s == o) continue;
          graph.add_relation(s, t.predicate, o, kg::Provenance::lexicon_extractor,
                             kg::Status::extracted, chunk.id);
        }

        if (i >= ex.augmented.size()) continue;
        const auto& aug = ex.augmented[i];
        for (const auto& t : aug.triples) {
          ++report.triples_pending;
          auto s = resolve_augmented(graph, t.subject, aug.mentions);
          auto o = resolve_augmented(graph, t.object, aug.mentions);
          if (s == o) continue;
          const auto size_before = graph.relations().size();
          auto id = graph.add_relation(s, t.predicate, o, kg::Provenance::augmenter,
                                       kg::Status::pending_review, chunk.id);
          if (graph.relations().size() > size_before) report.pending_relation_ids.push_back(id);
        }
      }
    } catch (const Error& e) {
      report.errors.push_back({doc.id, e.code(), e.what()});
    }
  }

  report.entities_added = graph.entities().size() - entities_before;
  report.relations_added = graph.relations().size() - relations_before;
  return report;
}

}  // namespace kgtriage::ingest
