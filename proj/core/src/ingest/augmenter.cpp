#include "kgtriage/ingest/augmenter.hpp"

#include <nlohmann/json.hpp>

#include "http_client.hpp"
#include "kgtriage/error.hpp"

namespace kgtriage::ingest {
namespace {

bool nonempty_string(const nlohmann::json& j, const char* key) {
  return j.contains(key) && j[key].is_string() && !j[key].get_ref<const std::string&>().empty();
}

std::optional<Mention> parse_mention(const Chunk& chunk, const nlohmann::json& j) {
  if (!j.is_object() || !nonempty_string(j, "surface") || !nonempty_string(j, "label") ||
      !nonempty_string(j, "category")) {
    return std::nullopt;
  }
  if (!j.contains("begin") || !j.contains("end") || !j["begin"].is_number_unsigned() ||
      !j["end"].is_number_unsigned()) {
    return std::nullopt;
  }
  Mention m;
  m.surface = j["surface"].get<std::string>();
  m.label = j["label"].get<std::string>();
  m.begin = j["begin"].get<std::size_t>();
  m.end = j["end"].get<std::size_t>();
  if (m.begin >= m.end || m.end > chunk.text.size()) return std::nullopt;
  try {
    m.category = kg::parse_category(j["category"].get<std::string>());
    if (j.contains("specialty")) {
      if (!j["specialty"].is_string()) return std::nullopt;
      m.specialty = kg::parse_specialty(j["specialty"].get<std::string>());
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  if (kg::canonical_id(m.label).empty()) return std::nullopt;
  return m;
}

std::optional<CandidateTriple> parse_triple(const nlohmann::json& j) {
  if (!j.is_object() || !nonempty_string(j, "subject") || !nonempty_string(j, "object") ||
      !nonempty_string(j, "predicate") || !j.contains("confidence") ||
      !j["confidence"].is_number()) {
    return std::nullopt;
  }
  CandidateTriple t;
  t.subject = j["subject"].get<std::string>();
  t.object = j["object"].get<std::string>();
  t.confidence = j["confidence"].get<double>();
  if (!(t.confidence >= 0.0 && t.confidence <= 1.0)) return std::nullopt;
  try {
    t.predicate = kg::Predicate::parse(j["predicate"].get<std::string>());
  } catch (const Error&) {
    return std::nullopt;
  }
  auto s = kg::canonical_id(t.subject), o = kg::canonical_id(t.object);
  if (s.empty() || o.empty() || s == o) return std::nullopt;
  t.provenance = kg::Provenance::augmenter;
  return t;
}

}  // namespace

AugmentResult parse_augmenter_response(const Chunk& chunk, std::string_view body) {
  auto doc = nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::augmenter_protocol_error, "response is not a JSON object");
  }
  AugmentResult result;
  for (const char* key : {"mentions", "triples"}) {
    if (doc.contains(key) && !doc[key].is_array()) {
      throw Error(ErrorCode::augmenter_protocol_error, std::string("'") + key + "' is not an array");
    }
  }
  if (doc.contains("mentions")) {
    for (const auto& m : doc["mentions"]) {
      if (auto parsed = parse_mention(chunk, m)) {
        result.candidate.mentions.push_back(std::move(*parsed));
      } else {
        ++result.dropped;
      }
    }
  }
  if (doc.contains("triples")) {
    for (const auto& t : doc["triples"]) {
      if (auto parsed = parse_triple(t)) {
        result.candidate.triples.push_back(std::move(*parsed));
      } else {
        ++result.dropped;
      }
    }
  }
  return result;
}

HttpAugmenter::HttpAugmenter(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
  detail::HttpTarget target;
  if (!detail::split_url(endpoint_, target)) {
    throw Error(ErrorCode::invalid_argument, "augmenter endpoint must be http://: " + endpoint_);
  }
  origin_ = target.origin;
  path_ = target.path;
}

AugmentResult HttpAugmenter::augment(const Chunk& chunk) {
  nlohmann::ordered_json request;
  request["chunk_id"] = chunk.id;
  request["text"] = chunk.text;
  auto reply = detail::post_json({origin_, path_}, request.dump(), timeout_);
  if (!reply.reached) {
    throw Error(ErrorCode::augmenter_unavailable, endpoint_ + ": " + reply.error);
  }
  if (reply.status != 200) {
    throw Error(ErrorCode::augmenter_protocol_error,
                endpoint_ + " answered HTTP " + std::to_string(reply.status));
  }
  return parse_augmenter_response(chunk, reply.body);
}

AugmentResult augment(const Chunk& chunk, Augmenter* augmenter) {
  if (augmenter == nullptr) return {};
  return augmenter->augment(chunk);
}

}  // namespace kgtriage::ingest
