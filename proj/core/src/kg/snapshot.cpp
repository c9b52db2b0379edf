#include "kgtriage/kg/snapshot.hpp"

#include <algorithm>
#include <initializer_list>

#include "kgtriage/error.hpp"

namespace kgtriage::kg {
namespace {

[[noreturn]] void schema(const std::string& what) {
  throw Error(ErrorCode::schema_violation, what);
}

void expect_keys(const nlohmann::json& j, std::initializer_list<const char*> keys,
                 std::string_view what) {
  if (!j.is_object()) schema(std::string(what) + " must be an object");
  for (const char* k : keys) {
    if (!j.contains(k)) schema(std::string(what) + " is missing '" + k + "'");
  }
  if (j.size() != keys.size()) schema(std::string(what) + " has unexpected fields");
}

const std::string& get_string(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string()) schema(std::string("field '") + key + "' must be a string");
  return v.template get_ref<const std::string&>();
}

}  // namespace

nlohmann::ordered_json entity_to_json(const Entity& e) {
  nlohmann::ordered_json j;
  j["id"] = e.id;
  j["label"] = e.label;
  j["category"] = to_string(e.category);
  j["specialty"] = to_string(e.specialty);
  j["aliases"] = nlohmann::ordered_json::array();
  for (const auto& a : e.aliases) j["aliases"].push_back(a);
  return j;
}

nlohmann::ordered_json relation_to_json(const RelationTriple& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["subject"] = r.subject;
  j["predicate"] = r.predicate.str();
  j["object"] = r.object;
  j["provenance"] = to_string(r.provenance);
  j["status"] = to_string(r.status);
  if (r.source_chunk) {
    j["source-chunk"] = *r.source_chunk;
  } else {
    j["source-chunk"] = nullptr;
  }
  return j;
}

Entity entity_from_json(const nlohmann::json& j) {
  expect_keys(j, {"id", "label", "category", "specialty", "aliases"}, "entity");
  Entity e;
  e.id = get_string(j, "id");
  e.label = get_string(j, "label");
  e.category = parse_category(get_string(j, "category"));
  e.specialty = parse_specialty(get_string(j, "specialty"));
  const auto& aliases = j.at("aliases");
  if (!aliases.is_array()) schema("entity aliases must be an array");
  for (const auto& a : aliases) {
    if (!a.is_string()) schema("entity alias must be a string");
    e.aliases.insert(a.get<std::string>());
  }
  return e;
}

RelationTriple relation_from_json(const nlohmann::json& j) {
  expect_keys(j, {"id", "subject", "predicate", "object", "provenance", "status", "source-chunk"},
              "relation");
  RelationTriple r;
  r.id = get_string(j, "id");
  r.subject = get_string(j, "subject");
  try {
    r.predicate = Predicate::parse(get_string(j, "predicate"));
  } catch (const Error& e) {
    schema(e.what());
  }
  r.object = get_string(j, "object");
  r.provenance = parse_provenance(get_string(j, "provenance"));
  r.status = parse_status(get_string(j, "status"));
  const auto& chunk = j.at("source-chunk");
  if (chunk.is_string()) {
    r.source_chunk = chunk.get<std::string>();
  } else if (!chunk.is_null()) {
    schema("source-chunk must be a string or null");
  }
  return r;
}

nlohmann::ordered_json to_document(const KnowledgeGraph& graph) {
  nlohmann::ordered_json doc;
  doc["version"] = graph.version();
  doc["entities"] = nlohmann::ordered_json::array();
  for (const auto& [id, e] : graph.entities()) doc["entities"].push_back(entity_to_json(e));

  std::vector<const RelationTriple*> rels;
  rels.reserve(graph.relations().size());
  for (const auto& [id, r] : graph.relations()) rels.push_back(&r);
  std::sort(rels.begin(), rels.end(), [](const RelationTriple* a, const RelationTriple* b) {
    auto ka = key_of(*a), kb = key_of(*b);
    if (ka != kb) return ka < kb;
    return a->id < b->id;
  });
  doc["relations"] = nlohmann::ordered_json::array();
  for (const auto* r : rels) doc["relations"].push_back(relation_to_json(*r));
  return doc;
}

std::string snapshot(const KnowledgeGraph& graph) { return to_document(graph).dump(2) + "\n"; }

KnowledgeGraph from_document(const nlohmann::json& doc) {
  expect_keys(doc, {"version", "entities", "relations"}, "graph document");
  const auto& version = doc.at("version");
  if (!version.is_number_unsigned() && !(version.is_number_integer() && version.get<long long>() >= 0)) {
    schema("version must be a non-negative integer");
  }
  if (!doc.at("entities").is_array() || !doc.at("relations").is_array()) {
    schema("entities and relations must be arrays");
  }
  std::vector<Entity> entities;
  for (const auto& e : doc.at("entities")) entities.push_back(entity_from_json(e));
  std::vector<RelationTriple> relations;
  for (const auto& r : doc.at("relations")) relations.push_back(relation_from_json(r));
  return KnowledgeGraph::restore(version.get<std::uint64_t>(), std::move(entities),
                                 std::move(relations));
}

KnowledgeGraph load(std::string_view text) {
  auto doc = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) schema("graph document is not valid JSON");
  return from_document(doc);
}

}  // namespace kgtriage::kg
