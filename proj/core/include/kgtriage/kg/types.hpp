#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>

namespace kgtriage::kg {

enum class Category { disease, symptom, drug, procedure, risk_factor, category, other };

enum class Specialty { general, cardiology, neurology, endocrinology, rheumatology };

enum class Provenance { lexicon_extractor, augmenter, expert, seed };

// extracted -> pending_review -> {approved, rejected}; approved and rejected are terminal.
enum class Status { extracted, pending_review, approved, rejected };

// Enum <-> lowercase kebab-case wire names. parse_* throw Error(schema_violation).
std::string_view to_string(Category c) noexcept;
std::string_view to_string(Specialty s) noexcept;
std::string_view to_string(Provenance p) noexcept;
std::string_view to_string(Status s) noexcept;
Category parse_category(std::string_view text);
Specialty parse_specialty(std::string_view text);
Provenance parse_provenance(std::string_view text);
Status parse_status(std::string_view text);

// The four consultant domains, in roster order.
inline constexpr Specialty kConsultantSpecialties[] = {
    Specialty::cardiology, Specialty::neurology, Specialty::endocrinology,
    Specialty::rheumatology};

bool is_live(Status s) noexcept;
bool can_transition(Status from, Status to) noexcept;

// Closed predicate vocabulary with an `other:<tag>` escape hatch.
class Predicate {
 public:
  enum class Kind {
    has_symptom,
    treats,
    causes,
    comorbid_with,
    reduces_risk_of,
    belongs_to,
    contraindicated_with,
    other,
  };

  Predicate() = default;
  Predicate(Kind kind) : kind_(kind) {}  // NOLINT(google-explicit-constructor)
  static Predicate other(std::string tag);

  // Accepts "has-symptom", ..., or "other:<tag>".
  static Predicate parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  const std::string& tag() const noexcept { return tag_; }
  std::string str() const;

  friend bool operator==(const Predicate&, const Predicate&) = default;
  friend auto operator<=>(const Predicate& a, const Predicate& b) { return a.str() <=> b.str(); }

 private:
  Kind kind_ = Kind::other;
  std::string tag_;
};

struct Entity {
  std::string id;
  std::string label;
  Category category = Category::other;
  Specialty specialty = Specialty::general;
  std::set<std::string> aliases;

  friend bool operator==(const Entity&, const Entity&) = default;
};

struct RelationTriple {
  std::string id;
  std::string subject;
  Predicate predicate;
  std::string object;
  Provenance provenance = Provenance::seed;
  Status status = Status::extracted;
  std::optional<std::string> source_chunk;

  friend bool operator==(const RelationTriple&, const RelationTriple&) = default;
};

// (subject, predicate, object) identity used for dedup and export ordering.
struct TripleKey {
  std::string subject;
  std::string predicate;
  std::string object;

  friend auto operator<=>(const TripleKey&, const TripleKey&) = default;
  friend bool operator==(const TripleKey&, const TripleKey&) = default;
};

TripleKey key_of(const RelationTriple& r);

// Canonical entity id: ASCII-lowercased, whitespace and underscores become
// single hyphens, other punctuation is dropped, leading/trailing hyphens
// trimmed. Bytes >= 0x80 (UTF-8 sequences) pass through unchanged.
std::string canonical_id(std::string_view label);

}  // namespace kgtriage::kg
