#include "kgtriage/kg/types.hpp"

#include <array>
#include <cctype>
#include <utility>

#include "kgtriage/error.hpp"

namespace kgtriage::kg {
namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view text, const std::array<std::pair<E, std::string_view>, N>& table,
             std::string_view what) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  throw Error(ErrorCode::schema_violation,
              "unknown " + std::string(what) + " '" + std::string(text) + "'");
}

template <typename E, std::size_t N>
std::string_view name_of(E value, const std::array<std::pair<E, std::string_view>, N>& table) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::array<std::pair<Category, std::string_view>, 7> kCategories{{
    {Category::disease, "disease"},
    {Category::symptom, "symptom"},
    {Category::drug, "drug"},
    {Category::procedure, "procedure"},
    {Category::risk_factor, "risk-factor"},
    {Category::category, "category"},
    {Category::other, "other"},
}};

constexpr std::array<std::pair<Specialty, std::string_view>, 5> kSpecialties{{
    {Specialty::general, "general"},
    {Specialty::cardiology, "cardiology"},
    {Specialty::neurology, "neurology"},
    {Specialty::endocrinology, "endocrinology"},
    {Specialty::rheumatology, "rheumatology"},
}};

constexpr std::array<std::pair<Provenance, std::string_view>, 4> kProvenances{{
    {Provenance::lexicon_extractor, "lexicon-extractor"},
    {Provenance::augmenter, "augmenter"},
    {Provenance::expert, "expert"},
    {Provenance::seed, "seed"},
}};

constexpr std::array<std::pair<Status, std::string_view>, 4> kStatuses{{
    {Status::extracted, "extracted"},
    {Status::pending_review, "pending-review"},
    {Status::approved, "approved"},
    {Status::rejected, "rejected"},
}};

constexpr std::array<std::pair<Predicate::Kind, std::string_view>, 7> kPredicates{{
    {Predicate::Kind::has_symptom, "has-symptom"},
    {Predicate::Kind::treats, "treats"},
    {Predicate::Kind::causes, "causes"},
    {Predicate::Kind::comorbid_with, "comorbid-with"},
    {Predicate::Kind::reduces_risk_of, "reduces-risk-of"},
    {Predicate::Kind::belongs_to, "belongs-to"},
    {Predicate::Kind::contraindicated_with, "contraindicated-with"},
}};

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

}  // namespace

std::string_view to_string(Category c) noexcept { return name_of(c, kCategories); }
std::string_view to_string(Specialty s) noexcept { return name_of(s, kSpecialties); }
std::string_view to_string(Provenance p) noexcept { return name_of(p, kProvenances); }
std::string_view to_string(Status s) noexcept { return name_of(s, kStatuses); }

Category parse_category(std::string_view text) { return parse_enum(text, kCategories, "category"); }
Specialty parse_specialty(std::string_view text) {
  return parse_enum(text, kSpecialties, "specialty");
}
Provenance parse_provenance(std::string_view text) {
  return parse_enum(text, kProvenances, "provenance");
}
Status parse_status(std::string_view text) { return parse_enum(text, kStatuses, "status"); }

bool is_live(Status s) noexcept { return s != Status::rejected; }

bool can_transition(Status from, Status to) noexcept {
  switch (from) {
    case Status::extracted:
      return to == Status::pending_review;
    case Status::pending_review:
      return to == Status::approved || to == Status::rejected;
    case Status::approved:
    case Status::rejected:
      return false;
  }
  return false;
}

Predicate Predicate::other(std::string tag) {
  Predicate p(Kind::other);
  p.tag_ = std::move(tag);
  return p;
}

Predicate Predicate::parse(std::string_view text) {
  constexpr std::string_view kOther = "other:";
  if (text.starts_with(kOther)) {
    auto tag = text.substr(kOther.size());
    if (tag.empty()) throw Error(ErrorCode::schema_violation, "empty predicate tag");
    return other(std::string(tag));
  }
  if (text == "other") return other("");
  return Predicate(parse_enum(text, kPredicates, "predicate"));
}

std::string Predicate::str() const {
  if (kind_ == Kind::other) return tag_.empty() ? "other" : "other:" + tag_;
  return std::string(name_of(kind_, kPredicates));
}

TripleKey key_of(const RelationTriple& r) { return {r.subject, r.predicate.str(), r.object}; }

std::string canonical_id(std::string_view label) {
  std::string out;
  out.reserve(label.size());
  bool pending_hyphen = false;
  for (char ch : label) {
    auto c = static_cast<unsigned char>(ch);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == '_' ||
        c == '-') {
      pending_hyphen = !out.empty();
      continue;
    }
    if (c < 0x80 && !is_ascii_alnum(ch)) continue;  // punctuation
    if (pending_hyphen) {
      out.push_back('-');
      pending_hyphen = false;
    }
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
  }
  return out;
}

}  // namespace kgtriage::kg
