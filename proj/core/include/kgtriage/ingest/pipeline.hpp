#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kgtriage/error.hpp"
#include "kgtriage/ingest/augmenter.hpp"
#include "kgtriage/ingest/lexicon.hpp"
#include "kgtriage/ingest/patterns.hpp"
#include "kgtriage/ingest/segment.hpp"
#include "kgtriage/kg/graph.hpp"

namespace kgtriage::ingest {

struct IngestOptions {
  std::size_t max_chunk_chars = 1000;
  Augmenter* augmenter = nullptr;  // not owned; null disables augmentation
};

struct DocumentError {
  std::string doc_id;
  ErrorCode code;
  std::string message;
};

// Counts are of extractor output, not of graph changes: re-ingesting a
// document repeats the counts while leaving the graph untouched.
struct IngestReport {
  std::size_t documents = 0;
  std::size_t chunks = 0;
  std::size_t mentions = 0;
  std::size_t triples_extracted = 0;  // pattern hits
  std::size_t triples_pending = 0;    // accepted augmenter triples
  std::size_t entities_added = 0;
  std::size_t relations_added = 0;
  std::size_t augmenter_dropped = 0;
  std::size_t augmenter_failures = 0;
  std::vector<std::string> pending_relation_ids;  // new pending-review triples, for the review queue
  std::vector<DocumentError> errors;
};

// Pure extraction for one document: segment, match, pattern triples and, if
// configured, augmenter candidates (one ExtractionCandidate per chunk and
// extractor). Throws on document-level errors.
struct DocumentExtraction {
  std::vector<Chunk> chunks;
  std::vector<ExtractionCandidate> lexical;    // parallel to chunks
  std::vector<ExtractionCandidate> augmented;  // parallel to chunks; empty if no augmenter
  std::size_t augmenter_dropped = 0;
  std::vector<DocumentError> warnings;
};
DocumentExtraction extract_document(const Document& doc, const Lexicon& lexicon,
                                    const std::vector<RelationPattern>& patterns,
                                    const IngestOptions& options);

// segment -> extract -> augment -> write, document by document. Pattern triples
// enter as extracted, augmenter triples as pending-review. A failing document
// is recorded in the report and the rest continue.
IngestReport ingest_corpus(const std::vector<Document>& docs, const Lexicon& lexicon,
                           const std::vector<RelationPattern>& patterns, kg::KnowledgeGraph& graph,
                           const IngestOptions& options = {});

}  // namespace kgtriage::ingest
