#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgtriage/kg/types.hpp"

namespace kgtriage::kg {

// Entities and triples an expert (or consultant feedback) has validated.
// Input to expand_graph.
struct ApprovedSet {
  std::vector<Entity> entities;
  std::vector<RelationTriple> relations;
};

// In-memory property graph: entities keyed by canonical id, relation triples
// keyed by opaque id. Rejected triples stay as tombstones so a later
// re-extraction of the same (subject, predicate, object) is recognisable as a
// re-proposal.
//
// Invariants held after every public mutation:
//   - every relation endpoint is an entity id in this graph
//   - live (non-rejected) relations are unique on (subject, predicate, object)
//   - version() strictly increases on every mutation
//
// Not internally synchronised; see SharedGraph for the reader/writer wrapper.
class KnowledgeGraph {
 public:
  using EntityMap = std::map<std::string, Entity, std::less<>>;
  using RelationMap = std::map<std::string, RelationTriple, std::less<>>;

  KnowledgeGraph() = default;

  // Rebuilds a graph from exported parts. Throws IntegrityViolation on dangling
  // endpoints, self loops, duplicate live triples or non-canonical entity ids.
  static KnowledgeGraph restore(std::uint64_t version, std::vector<Entity> entities,
                                std::vector<RelationTriple> relations);

  // Returns the id of the entity the label (or any alias) resolves to, merging
  // new aliases into it; inserts a new entity otherwise.
  std::string upsert_entity(std::string_view label, Category category, Specialty specialty,
                            const std::set<std::string>& aliases = {});

  // Inserts a triple unless a live one with the same key exists, in which case
  // that triple's id is returned unchanged.
  std::string add_relation(std::string_view subject, const Predicate& predicate,
                           std::string_view object, Provenance provenance, Status status,
                           std::optional<std::string> source_chunk = std::nullopt);

  // Moves a triple along extracted -> pending-review -> {approved, rejected}.
  // Setting the current status again is a no-op.
  void set_status(std::string_view relation_id, Status status);

  const Entity* find_entity(std::string_view id) const;
  const Entity& entity(std::string_view id) const;  // throws UnknownEntity
  const RelationTriple* find_relation(std::string_view id) const;
  const RelationTriple& relation(std::string_view id) const;  // throws NotFound

  // Entity id for a surface form: exact canonical id first, then aliases.
  std::optional<std::string> resolve(std::string_view surface) const;

  // Id of the live triple with this key, if any.
  std::optional<std::string> find_live(const TripleKey& key) const;

  // Relations whose subject is `entity_id`, in id order.
  std::vector<const RelationTriple*> outgoing(std::string_view entity_id) const;

  // Ids of entities in a category, lexicographic.
  std::vector<std::string> entity_ids(Category category) const;

  const EntityMap& entities() const noexcept { return entities_; }
  const RelationMap& relations() const noexcept { return relations_; }
  std::size_t live_relation_count() const noexcept { return live_.size(); }
  std::uint64_t version() const noexcept { return version_; }

  // Re-derives every invariant from scratch; throws IntegrityViolation.
  void check_invariants() const;

  // Same entities and relations, ignoring the version counter.
  bool same_content(const KnowledgeGraph& other) const;

  friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
    return a.version_ == b.version_ && a.same_content(b);
  }

 private:
  friend KnowledgeGraph expand_graph(KnowledgeGraph graph, const ApprovedSet& approved);

  void index_entity(const Entity& e);
  void insert_relation(RelationTriple r);
  std::string next_relation_id();

  EntityMap entities_;
  RelationMap relations_;
  std::unordered_map<std::string, std::string> alias_index_;  // canonical alias -> entity id
  std::map<TripleKey, std::string> live_;                      // key -> relation id
  std::unordered_map<std::string, std::vector<std::string>> outgoing_;
  std::uint64_t version_ = 0;
  std::uint64_t next_relation_seq_ = 1;
};

// G_expanded = G ∪ approved. Live triples already present (by key) are marked
// approved in place; new entities and triples are inserted. Always bumps the
// version. Throws UnapprovedInput if any triple is not approved and
// IntegrityViolation if a triple references an entity found in neither side.
KnowledgeGraph expand_graph(KnowledgeGraph graph, const ApprovedSet& approved);

// Objects of has-symptom edges out of `disease_id` whose status is in
// `statuses`, sorted and unique. Throws UnknownEntity.
std::vector<std::string> symptoms_of(const KnowledgeGraph& graph, std::string_view disease_id,
                                     const std::set<Status>& statuses);

}  // namespace kgtriage::kg
