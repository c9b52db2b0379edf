#include "kgtriage/kg/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "kgtriage/error.hpp"

namespace kgtriage::kg {
namespace {

constexpr std::string_view kRelationPrefix = "rel-";

// Numeric suffix of ids minted by next_relation_id(), 0 for foreign ids.
std::uint64_t relation_seq(std::string_view id) {
  if (!id.starts_with(kRelationPrefix)) return 0;
  auto digits = id.substr(kRelationPrefix.size());
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return 0;
  return value;
}

[[noreturn]] void integrity(const std::string& what) {
  throw Error(ErrorCode::integrity_violation, what);
}

}  // namespace

KnowledgeGraph KnowledgeGraph::restore(std::uint64_t version, std::vector<Entity> entities,
                                       std::vector<RelationTriple> relations) {
  KnowledgeGraph g;
  for (auto& e : entities) {
    if (e.id.empty() || e.id != canonical_id(e.label)) {
      integrity("entity id '" + e.id + "' is not the canonical form of its label");
    }
    if (g.entities_.contains(e.id)) integrity("duplicate entity id '" + e.id + "'");
    auto id = e.id;
    auto [it, _] = g.entities_.emplace(id, std::move(e));
    g.index_entity(it->second);
  }
  for (auto& r : relations) {
    if (r.id.empty() || g.relations_.contains(r.id)) {
      integrity("missing or duplicate relation id '" + r.id + "'");
    }
    if (!g.entities_.contains(r.subject) || !g.entities_.contains(r.object)) {
      integrity("relation '" + r.id + "' has a dangling endpoint");
    }
    if (r.subject == r.object) integrity("relation '" + r.id + "' is a self loop");
    if (is_live(r.status) && g.live_.contains(key_of(r))) {
      integrity("relation '" + r.id + "' duplicates a live triple");
    }
    g.insert_relation(std::move(r));
  }
  g.version_ = version;
  return g;
}

void KnowledgeGraph::index_entity(const Entity& e) {
  for (const auto& alias : e.aliases) {
    auto key = canonical_id(alias);
    if (!key.empty() && key != e.id) alias_index_.try_emplace(key, e.id);
  }
}

void KnowledgeGraph::insert_relation(RelationTriple r) {
  next_relation_seq_ = std::max(next_relation_seq_, relation_seq(r.id) + 1);
  if (is_live(r.status)) live_.emplace(key_of(r), r.id);
  auto& out = outgoing_[r.subject];
  out.insert(std::upper_bound(out.begin(), out.end(), r.id), r.id);
  auto id = r.id;
  relations_.emplace(std::move(id), std::move(r));
}

std::string KnowledgeGraph::next_relation_id() {
  for (;;) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "rel-%06llu",
                  static_cast<unsigned long long>(next_relation_seq_++));
    if (!relations_.contains(std::string_view(buf))) return buf;
  }
}

std::optional<std::string> KnowledgeGraph::resolve(std::string_view surface) const {
  auto key = canonical_id(surface);
  if (key.empty()) return std::nullopt;
  if (entities_.contains(key)) return key;
  if (auto it = alias_index_.find(key); it != alias_index_.end()) return it->second;
  return std::nullopt;
}

std::string KnowledgeGraph::upsert_entity(std::string_view label, Category category,
                                          Specialty specialty,
                                          const std::set<std::string>& aliases) {
  auto id = canonical_id(label);
  if (id.empty()) throw Error(ErrorCode::empty_label, "label '" + std::string(label) + "'");

  auto target = resolve(label);
  for (auto it = aliases.begin(); !target && it != aliases.end(); ++it) target = resolve(*it);

  if (target) {
    auto& e = entities_.at(*target);
    bool changed = false;
    auto merge = [&](const std::string& alias) {
      auto key = canonical_id(alias);
      if (key.empty() || key == e.id || entities_.contains(key) || alias_index_.contains(key)) {
        return;
      }
      e.aliases.insert(alias);
      alias_index_.emplace(key, e.id);
      changed = true;
    };
    merge(std::string(label));
    for (const auto& a : aliases) merge(a);
    if (changed) ++version_;
    return *target;
  }

  Entity e{id, std::string(label), category, specialty, {}};
  std::set<std::string> seen_keys;
  for (const auto& alias : aliases) {
    auto key = canonical_id(alias);
    if (key.empty() || key == id || entities_.contains(key) || alias_index_.contains(key) ||
        !seen_keys.insert(key).second) {
      continue;
    }
    e.aliases.insert(alias);
  }
  auto [it, _] = entities_.emplace(id, std::move(e));
  index_entity(it->second);
  ++version_;
  return id;
}

std::string KnowledgeGraph::add_relation(std::string_view subject, const Predicate& predicate,
                                         std::string_view object, Provenance provenance,
                                         Status status, std::optional<std::string> source_chunk) {
  if (!entities_.contains(subject)) {
    throw Error(ErrorCode::dangling_endpoint, "subject '" + std::string(subject) + "'");
  }
  if (!entities_.contains(object)) {
    throw Error(ErrorCode::dangling_endpoint, "object '" + std::string(object) + "'");
  }
  if (subject == object) throw Error(ErrorCode::self_loop, std::string(subject));

  TripleKey key{std::string(subject), predicate.str(), std::string(object)};
  if (auto it = live_.find(key); it != live_.end()) return it->second;

  RelationTriple r{next_relation_id(), std::string(subject), predicate, std::string(object),
                   provenance, status, std::move(source_chunk)};
  auto id = r.id;
  insert_relation(std::move(r));
  ++version_;
  return id;
}

void KnowledgeGraph::set_status(std::string_view relation_id, Status status) {
  auto it = relations_.find(relation_id);
  if (it == relations_.end()) {
    throw Error(ErrorCode::not_found, "relation '" + std::string(relation_id) + "'");
  }
  auto& r = it->second;
  if (r.status == status) return;
  if (!can_transition(r.status, status)) {
    throw Error(ErrorCode::invalid_transition, std::string(relation_id) + ": " +
                                                   std::string(to_string(r.status)) + " -> " +
                                                   std::string(to_string(status)));
  }
  if (!is_live(status)) live_.erase(key_of(r));
  r.status = status;
  ++version_;
}

const Entity* KnowledgeGraph::find_entity(std::string_view id) const {
  auto it = entities_.find(id);
  return it == entities_.end() ? nullptr : &it->second;
}

const Entity& KnowledgeGraph::entity(std::string_view id) const {
  if (const auto* e = find_entity(id)) return *e;
  throw Error(ErrorCode::unknown_entity, "'" + std::string(id) + "'");
}

const RelationTriple* KnowledgeGraph::find_relation(std::string_view id) const {
  auto it = relations_.find(id);
  return it == relations_.end() ? nullptr : &it->second;
}

const RelationTriple& KnowledgeGraph::relation(std::string_view id) const {
  if (const auto* r = find_relation(id)) return *r;
  throw Error(ErrorCode::not_found, "relation '" + std::string(id) + "'");
}

std::optional<std::string> KnowledgeGraph::find_live(const TripleKey& key) const {
  if (auto it = live_.find(key); it != live_.end()) return it->second;
  return std::nullopt;
}

std::vector<const RelationTriple*> KnowledgeGraph::outgoing(std::string_view entity_id) const {
  std::vector<const RelationTriple*> out;
  auto it = outgoing_.find(std::string(entity_id));
  if (it == outgoing_.end()) return out;
  out.reserve(it->second.size());
  for (const auto& id : it->second) out.push_back(&relations_.find(id)->second);
  return out;
}

std::vector<std::string> KnowledgeGraph::entity_ids(Category category) const {
  std::vector<std::string> ids;
  for (const auto& [id, e] : entities_) {
    if (e.category == category) ids.push_back(id);
  }
  return ids;
}

void KnowledgeGraph::check_invariants() const {
  std::set<TripleKey> live;
  for (const auto& [id, e] : entities_) {
    if (id.empty() || id != e.id) integrity("entity key mismatch for '" + id + "'");
  }
  for (const auto& [id, r] : relations_) {
    if (id != r.id) integrity("relation key mismatch for '" + id + "'");
    if (!entities_.contains(r.subject) || !entities_.contains(r.object)) {
      integrity("relation '" + id + "' has a dangling endpoint");
    }
    if (r.subject == r.object) integrity("relation '" + id + "' is a self loop");
    if (is_live(r.status) && !live.insert(key_of(r)).second) {
      integrity("relation '" + id + "' duplicates a live triple");
    }
  }
  if (live.size() != live_.size()) integrity("live index out of sync");
}

bool KnowledgeGraph::same_content(const KnowledgeGraph& other) const {
  return entities_ == other.entities_ && relations_ == other.relations_;
}

KnowledgeGraph expand_graph(KnowledgeGraph graph, const ApprovedSet& approved) {
  for (const auto& r : approved.relations) {
    if (r.status != Status::approved) {
      throw Error(ErrorCode::unapproved_input,
                  "triple '" + r.id + "' has status " + std::string(to_string(r.status)));
    }
  }

  for (const auto& incoming : approved.entities) {
    auto it = graph.entities_.find(incoming.id);
    if (it == graph.entities_.end()) {
      if (incoming.id.empty() || incoming.id != canonical_id(incoming.label)) {
        integrity("entity id '" + incoming.id + "' is not canonical");
      }
      auto [pos, _] = graph.entities_.emplace(incoming.id, incoming);
      graph.index_entity(pos->second);
      continue;
    }
    for (const auto& alias : incoming.aliases) {
      auto key = canonical_id(alias);
      if (key.empty() || key == it->second.id || graph.entities_.contains(key) ||
          graph.alias_index_.contains(key)) {
        continue;
      }
      it->second.aliases.insert(alias);
      graph.alias_index_.emplace(key, it->second.id);
    }
  }

  for (const auto& incoming : approved.relations) {
    if (!graph.entities_.contains(incoming.subject) || !graph.entities_.contains(incoming.object)) {
      integrity("approved triple '" + incoming.id + "' has a dangling endpoint");
    }
    if (incoming.subject == incoming.object) {
      integrity("approved triple '" + incoming.id + "' is a self loop");
    }
    if (auto existing = graph.find_live(key_of(incoming))) {
      graph.relations_.at(*existing).status = Status::approved;
      continue;
    }
    RelationTriple r = incoming;
    if (r.id.empty() || graph.relations_.contains(r.id)) r.id = graph.next_relation_id();
    graph.insert_relation(std::move(r));
  }

  ++graph.version_;
  return graph;
}

std::vector<std::string> symptoms_of(const KnowledgeGraph& graph, std::string_view disease_id,
                                     const std::set<Status>& statuses) {
  graph.entity(disease_id);
  std::vector<std::string> out;
  for (const auto* r : graph.outgoing(disease_id)) {
    if (r->predicate.kind() == Predicate::Kind::has_symptom && statuses.contains(r->status)) {
      out.push_back(r->object);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace kgtriage::kg
