#include "kgtriage/ingest/lexicon.hpp"

#include <cctype>
#include <fstream>

#include "kgtriage/error.hpp"
#include "ingest/text_util.hpp"

namespace kgtriage::ingest {
namespace {

char fold_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  if (u == '\t' || u == '\n' || u == '\r' || u == '\f' || u == '\v') return ' ';
  if (u >= 'A' && u <= 'Z') return static_cast<char>(u - 'A' + 'a');
  return c;
}

}  // namespace

std::string fold_surface(std::string_view text) {
  std::string out(text);
  for (auto& c : out) c = fold_byte(c);
  return out;
}

bool is_word_byte(char c) noexcept {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u);
}

Lexicon::Lexicon() : trie_(1) {}

bool Lexicon::add(std::string_view surface, LexiconEntry entry) {
  auto key = fold_surface(trim(surface));
  if (key.empty()) throw Error(ErrorCode::format_error, "empty lexicon surface");
  if (trim(entry.label).empty() || kg::canonical_id(entry.label).empty()) {
    throw Error(ErrorCode::format_error, "lexicon surface '" + key + "' has an empty label");
  }
  auto [it, inserted] = entries_.emplace(key, std::move(entry));
  if (!inserted) return false;

  std::size_t node = 0;
  for (char c : it->first) {
    auto next = trie_[node].next.find(c);
    if (next == trie_[node].next.end()) {
      trie_.emplace_back();
      next = trie_[node].next.emplace(c, trie_.size() - 1).first;
    }
    node = next->second;
  }
  trie_[node].terminal = it->first;
  return true;
}

Lexicon Lexicon::parse(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    auto fields = split(line, '\t');
    auto where = "lexicon line " + std::to_string(line_no);
    if (fields.size() != 4) throw Error(ErrorCode::format_error, where + ": expected 4 fields");
    LexiconEntry entry;
    entry.label = std::string(trim(fields[1]));
    try {
      entry.category = kg::parse_category(trim(fields[2]));
      entry.specialty = kg::parse_specialty(trim(fields[3]));
    } catch (const Error& e) {
      throw Error(ErrorCode::format_error, where + ": " + e.what());
    }
    bool added = false;
    try {
      added = lex.add(fields[0], std::move(entry));
    } catch (const Error& e) {
      throw Error(ErrorCode::format_error, where + ": " + e.what());
    }
    if (!added) {
      throw Error(ErrorCode::format_error,
                  where + ": duplicate surface '" + std::string(trim(fields[0])) + "'");
    }
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open lexicon '" + path + "'");
  return parse(in);
}

std::optional<LexiconEntry> Lexicon::find(std::string_view surface) const {
  auto it = entries_.find(fold_surface(trim(surface)));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<Mention> Lexicon::match(std::string_view text) const {
  std::vector<Mention> out;
  const std::size_t n = text.size();
  auto start_ok = [&](std::size_t i) {
    return i == 0 || !is_word_byte(text[i - 1]) || !is_word_byte(text[i]);
  };
  auto end_ok = [&](std::size_t j) {
    return j == n || !is_word_byte(text[j]) || !is_word_byte(text[j - 1]);
  };

  std::size_t i = 0;
  while (i < n) {
    std::size_t best_end = 0;
    const std::string* best = nullptr;  // points into trie_
    if (start_ok(i)) {
      std::size_t node = 0;
      for (std::size_t j = i; j < n; ++j) {
        auto folded = fold_byte(text[j]);
        auto next = trie_[node].next.find(folded);
        if (next == trie_[node].next.end()) break;
        node = next->second;
        if (!trie_[node].terminal.empty() && end_ok(j + 1)) {
          best = &trie_[node].terminal;
          best_end = j + 1;
        }
      }
    }
    if (!best) {
      ++i;
      continue;
    }
    const auto& entry = entries_.at(*best);
    out.push_back(Mention{std::string(text.substr(i, best_end - i)), entry.label, entry.category,
                          entry.specialty, i, best_end});
    i = best_end;
  }
  return out;
}

std::vector<Mention> extract_entities(const Chunk& chunk, const Lexicon& lexicon) {
  return lexicon.match(chunk.text);
}

}  // namespace kgtriage::ingest
