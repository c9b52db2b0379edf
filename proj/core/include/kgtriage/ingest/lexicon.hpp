#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgtriage/ingest/segment.hpp"
#include "kgtriage/kg/types.hpp"

namespace kgtriage::ingest {

struct LexiconEntry {
  std::string label;  // canonical display label, e.g. "Type 2 Diabetes"
  kg::Category category = kg::Category::other;
  kg::Specialty specialty = kg::Specialty::general;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

// An entity occurrence inside a chunk; offsets are chunk-relative bytes.
struct Mention {
  std::string surface;  // text as it appears in the chunk
  std::string label;
  kg::Category category = kg::Category::other;
  kg::Specialty specialty = kg::Specialty::general;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Mention&, const Mention&) = default;
};

// Surface form normalisation: ASCII lowercase, each whitespace byte folded to
// ' '. Applied to lexicon keys and, byte for byte, to text during matching.
std::string fold_surface(std::string_view text);

// Word characters for boundary checks: ASCII alphanumerics and any byte of a
// multi-byte UTF-8 sequence.
bool is_word_byte(char c) noexcept;

// Dictionary of surface forms backed by a byte trie.
class Lexicon {
 public:
  Lexicon();

  // Returns false (and changes nothing) if the folded surface already exists.
  // Throws FormatError for an empty surface or label.
  bool add(std::string_view surface, LexiconEntry entry);

  // Tab-separated `surface<TAB>label<TAB>category<TAB>specialty` lines; '#'
  // starts a comment line. Duplicate surfaces are a FormatError.
  static Lexicon parse(std::istream& in);
  static Lexicon load_file(const std::string& path);

  std::optional<LexiconEntry> find(std::string_view surface) const;
  const std::map<std::string, LexiconEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // Longest-leftmost, non-overlapping, case-insensitive matches on word
  // boundaries, in offset order.
  std::vector<Mention> match(std::string_view text) const;

 private:
  struct Node {
    std::map<char, std::size_t> next;
    std::string terminal;  // key into entries_, empty if none
  };

  std::map<std::string, LexiconEntry> entries_;
  std::vector<Node> trie_;
};

std::vector<Mention> extract_entities(const Chunk& chunk, const Lexicon& lexicon);

}  // namespace kgtriage::ingest
