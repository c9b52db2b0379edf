#include "kgtriage/ingest/patterns.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ingest/text_util.hpp"
#include "kgtriage/error.hpp"

namespace kgtriage::ingest {
namespace {

// True if triggers[t..] can be placed in tokens[from, hi) with gaps <= max_gap,
// the final trigger ending within max_gap tokens of hi.
bool place(const std::vector<Token>& tokens, std::size_t from, std::size_t hi,
           const std::vector<std::string>& triggers, std::size_t t, std::size_t max_gap) {
  if (t == triggers.size()) return hi - from <= max_gap;
  const std::size_t last = std::min(hi, from + max_gap + 1);
  for (std::size_t p = from; p < last; ++p) {
    if (tokens[p].text == triggers[t] && place(tokens, p + 1, hi, triggers, t + 1, max_gap)) {
      return true;
    }
  }
  return false;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// True if `gap` (text between two tokens) ends a sentence: terminal
// punctuation followed by whitespace, or a blank line.
bool ends_sentence(std::string_view gap) {
  if (gap.find("\n\n") != std::string_view::npos) return true;
  for (std::size_t i = 0; i + 1 < gap.size(); ++i) {
    if ((gap[i] == '.' || gap[i] == '!' || gap[i] == '?') && is_space(gap[i + 1])) return true;
  }
  return false;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_byte(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word_byte(text[j])) ++j;
    tokens.push_back(Token{fold_surface(text.substr(i, j - i)), i, j});
    i = j;
  }
  return tokens;
}

RelationPattern RelationPattern::make(std::string id, const kg::Predicate& predicate,
                                      std::string_view trigger_template, std::size_t max_gap) {
  std::istringstream words{std::string(trigger_template)};
  std::vector<std::string> parts;
  for (std::string w; words >> w;) parts.push_back(w);

  auto fail = [&](const std::string& why) -> RelationPattern {
    throw Error(ErrorCode::format_error, "pattern '" + id + "': " + why);
  };
  if (id.empty()) fail("empty id");
  if (parts.size() < 3) fail("template needs {1}, {2} and at least one trigger word");
  const auto& first = parts.front();
  const auto& last = parts.back();
  bool forward = first == "{1}" && last == "{2}";
  bool backward = first == "{2}" && last == "{1}";
  if (!forward && !backward) fail("template must start and end with the two slots");

  RelationPattern p;
  p.id = std::move(id);
  p.predicate = predicate;
  p.subject_first = forward;
  p.max_gap = max_gap;
  for (std::size_t i = 1; i + 1 < parts.size(); ++i) {
    auto toks = tokenize(parts[i]);
    if (toks.size() != 1 || toks[0].begin != 0 || toks[0].end != parts[i].size()) {
      return fail("trigger '" + parts[i] + "' is not a single word");
    }
    p.triggers.push_back(toks[0].text);
  }
  return p;
}

std::vector<RelationPattern> parse_patterns(std::istream& in) {
  std::vector<RelationPattern> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    auto where = "pattern line " + std::to_string(line_no);
    auto fields = split(line, '\t');
    if (fields.size() != 4) throw Error(ErrorCode::format_error, where + ": expected 4 fields");
    auto gap_text = trim(fields[3]);
    std::size_t gap = 0;
    auto [ptr, ec] = std::from_chars(gap_text.data(), gap_text.data() + gap_text.size(), gap);
    if (gap_text.empty() || ec != std::errc() || ptr != gap_text.data() + gap_text.size()) {
      throw Error(ErrorCode::format_error, where + ": max-gap must be a non-negative integer");
    }
    kg::Predicate predicate;
    try {
      predicate = kg::Predicate::parse(trim(fields[1]));
    } catch (const Error& e) {
      throw Error(ErrorCode::format_error, where + ": " + e.what());
    }
    auto pattern = RelationPattern::make(std::string(trim(fields[0])), predicate, fields[2], gap);
    if (!ids.insert(pattern.id).second) {
      throw Error(ErrorCode::format_error, where + ": duplicate pattern id '" + pattern.id + "'");
    }
    out.push_back(std::move(pattern));
  }
  return out;
}

std::vector<RelationPattern> load_patterns_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open patterns '" + path + "'");
  return parse_patterns(in);
}

std::vector<CandidateTriple> extract_relations(const Chunk& chunk,
                                               const std::vector<Mention>& mentions,
                                               const std::vector<RelationPattern>& patterns) {
  std::vector<CandidateTriple> out;
  if (mentions.size() < 2 || patterns.empty()) return out;

  const auto tokens = tokenize(chunk.text);
  std::vector<std::size_t> sentence(tokens.size(), 0);
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    auto gap = std::string_view(chunk.text).substr(tokens[i - 1].end, tokens[i].begin - tokens[i - 1].end);
    sentence[i] = sentence[i - 1] + (ends_sentence(gap) ? 1 : 0);
  }
  auto first_token_at = [&](std::size_t offset) {
    return static_cast<std::size_t>(
        std::lower_bound(tokens.begin(), tokens.end(), offset,
                         [](const Token& t, std::size_t off) { return t.begin < off; }) -
        tokens.begin());
  };

  std::vector<const RelationPattern*> ordered;
  for (const auto& p : patterns) ordered.push_back(&p);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->id < b->id; });

  for (const auto* pattern : ordered) {
    for (std::size_t a = 0; a < mentions.size(); ++a) {
      for (std::size_t b = a + 1; b < mentions.size(); ++b) {
        const auto& left = mentions[a];
        const auto& right = mentions[b];
        if (left.end > right.begin) continue;
        if (kg::canonical_id(left.label) == kg::canonical_id(right.label)) continue;
        std::size_t lo = first_token_at(left.end);
        std::size_t hi = first_token_at(right.begin);
        if (hi < lo || hi - lo < pattern->triggers.size()) continue;
        if (sentence[first_token_at(left.begin)] != sentence[hi]) continue;
        if (!place(tokens, lo, hi, pattern->triggers, 0, pattern->max_gap)) continue;
        const auto& subject = pattern->subject_first ? left : right;
        const auto& object = pattern->subject_first ? right : left;
        out.push_back(CandidateTriple{subject.label, pattern->predicate, object.label, 1.0,
                                      kg::Provenance::lexicon_extractor, pattern->id, left.begin,
                                      right.end});
      }
    }
  }
  return out;
}

}  // namespace kgtriage::ingest
