#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "kgtriage/ingest/lexicon.hpp"
#include "kgtriage/ingest/segment.hpp"
#include "kgtriage/kg/types.hpp"

namespace kgtriage::ingest {

// A trigger template such as "{1} reduces risk {2}": one slot at each end and
// at least one trigger word between them. Slot {1} is the subject, {2} the
// object, so "{2} treated with {1}" reverses the text order.
struct RelationPattern {
  std::string id;
  kg::Predicate predicate;
  bool subject_first = true;
  std::vector<std::string> triggers;  // lowercase word tokens
  std::size_t max_gap = 0;            // tokens allowed before, between and after triggers

  // Throws FormatError.
  static RelationPattern make(std::string id, const kg::Predicate& predicate,
                              std::string_view trigger_template, std::size_t max_gap);

  friend bool operator==(const RelationPattern&, const RelationPattern&) = default;
};

// `pattern-id<TAB>predicate<TAB>trigger-template<TAB>max-gap` per line, '#'
// comments. Duplicate pattern ids are a FormatError.
std::vector<RelationPattern> parse_patterns(std::istream& in);
std::vector<RelationPattern> load_patterns_file(const std::string& path);

// One proposed edge, expressed over entity labels.
struct CandidateTriple {
  std::string subject;  // label
  kg::Predicate predicate;
  std::string object;  // label
  double confidence = 1.0;
  kg::Provenance provenance = kg::Provenance::lexicon_extractor;
  std::string pattern_id;    // empty for augmenter output
  std::size_t begin = 0;     // chunk-relative span covering both mentions
  std::size_t end = 0;

  friend bool operator==(const CandidateTriple&, const CandidateTriple&) = default;
};

// Everything one extractor proposes for a chunk.
struct ExtractionCandidate {
  std::vector<Mention> mentions;
  std::vector<CandidateTriple> triples;
};

// A word token of chunk text: maximal run of word bytes, lowercased.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};
std::vector<Token> tokenize(std::string_view text);

// For every ordered pair of mentions and every pattern, emits a triple when
// the trigger words occur between the two mentions in order, with at most
// max_gap tokens in each gap, and both mentions sit in the same sentence
// (sentences end at . ! ? followed by whitespace, or at a blank line). Pairs
// resolving to the same entity are skipped.
// Ordered by pattern id, then the offsets of the two mentions. Confidence 1.
std::vector<CandidateTriple> extract_relations(const Chunk& chunk,
                                               const std::vector<Mention>& mentions,
                                               const std::vector<RelationPattern>& patterns);

}  // namespace kgtriage::ingest
