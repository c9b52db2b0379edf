#include "kgtriage/ingest/segment.hpp"

#include <string_view>

#include "kgtriage/error.hpp"

namespace kgtriage::ingest {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }
bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_continuation(char c) { return (static_cast<unsigned char>(c) & 0xC0) == 0x80; }

// End offset of the next chunk starting at `pos`; caller guarantees the rest
// of the text does not fit.
std::size_t choose_cut(std::string_view text, std::size_t pos, std::size_t limit) {
  const std::size_t last = pos + limit;
  std::size_t paragraph = 0, sentence = 0, space = 0;
  for (std::size_t p = pos + 1; p <= last; ++p) {
    char prev = text[p - 1];
    if (!is_space(prev)) continue;
    space = p;
    if (p >= pos + 2) {
      char before = text[p - 2];
      if (prev == '\n' && before == '\n') paragraph = p;
      if (is_terminator(before)) sentence = p;
    }
  }
  if (paragraph) return paragraph;
  if (sentence) return sentence;
  if (space) return space;

  std::size_t cut = last;
  while (cut > pos && is_continuation(text[cut])) --cut;
  if (cut == pos) {
    // One code point wider than the budget.
    cut = pos + 1;
    while (cut < text.size() && is_continuation(text[cut])) ++cut;
  }
  return cut;
}

}  // namespace

std::vector<Chunk> segment_document(const Document& doc, std::size_t max_chunk_chars) {
  if (max_chunk_chars == 0) throw Error(ErrorCode::invalid_argument, "max_chunk_chars must be >= 1");
  if (doc.text.empty()) throw Error(ErrorCode::empty_document, "document '" + doc.id + "'");

  std::string_view text = doc.text;
  std::vector<Chunk> chunks;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end =
        text.size() - pos <= max_chunk_chars ? text.size() : choose_cut(text, pos, max_chunk_chars);
    Chunk c;
    c.ordinal = chunks.size();
    c.id = doc.id + "#" + std::to_string(c.ordinal);
    c.doc_id = doc.id;
    c.text = std::string(text.substr(pos, end - pos));
    c.begin = pos;
    c.end = end;
    chunks.push_back(std::move(c));
    pos = end;
  }
  return chunks;
}

}  // namespace kgtriage::ingest
