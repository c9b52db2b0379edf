#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kgtriage::ingest {

struct Document {
  std::string id;
  std::string text;
  std::string source;
};

// A contiguous slice [begin, end) of a document's text.
struct Chunk {
  std::string id;  // "<doc-id>#<ordinal>"
  std::string doc_id;
  std::size_t ordinal = 0;
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

// Splits a document into chunks of at most `max_chunk_chars` bytes. Each cut
// is placed at the last boundary that fits, preferring, in order: the end of
// a blank-line paragraph break, whitespace following '.', '!' or '?',
// any whitespace, and finally a hard cut (moved back to a UTF-8 code point
// start). A chunk only exceeds the budget when a single code point is wider
// than the budget itself. Concatenating the chunk texts yields the document.
//
// Throws EmptyDocument for empty text, InvalidArgument for a zero budget.
std::vector<Chunk> segment_document(const Document& doc, std::size_t max_chunk_chars);

}  // namespace kgtriage::ingest
