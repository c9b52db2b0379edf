#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "kgtriage/kg/graph.hpp"

namespace kgtriage::kg {

// Graph export document:
//   {"version": N,
//    "entities":  [{"id","label","category","specialty","aliases"}...]   sorted by id
//    "relations": [{"id","subject","predicate","object","provenance","status","source-chunk"}...]
//                 sorted by (subject, predicate, object), then id}
// Keys appear in exactly that order; enums are kebab-case strings; aliases
// are a sorted array; an absent source chunk is null.
nlohmann::ordered_json to_document(const KnowledgeGraph& graph);

// Canonical UTF-8 text of to_document, two-space indent, trailing newline.
// Byte-stable for equal graphs.
std::string snapshot(const KnowledgeGraph& graph);

// Throws SchemaViolation for shape/enum errors and IntegrityViolation for
// dangling or duplicate content.
KnowledgeGraph from_document(const nlohmann::json& doc);
KnowledgeGraph load(std::string_view text);

nlohmann::ordered_json entity_to_json(const Entity& e);
nlohmann::ordered_json relation_to_json(const RelationTriple& r);
Entity entity_from_json(const nlohmann::json& j);
RelationTriple relation_from_json(const nlohmann::json& j);

}  // namespace kgtriage::kg
