#include "kgtriage/curation/review_log.hpp"

#include <fstream>

#include "kgtriage/error.hpp"
#include "kgtriage/kg/snapshot.hpp"

namespace kgtriage::curation {

nlohmann::ordered_json event_to_json(const ReviewEvent& event) {
  nlohmann::ordered_json j;
  j["ts"] = event.ts_ms;
  j["item_id"] = event.item_id;
  j["actor"] = event.actor;
  j["action"] = to_string(event.action);
  j["triple"] = kg::relation_to_json(event.triple);
  if (event.note) j["note"] = *event.note;
  return j;
}

ReviewEvent event_from_json(const nlohmann::json& j, std::uint64_t seq) {
  auto bad = [&](const std::string& why) -> ReviewEvent {
    throw Error(ErrorCode::schema_violation, "review log line " + std::to_string(seq) + ": " + why);
  };
  if (!j.is_object()) return bad("not an object");
  for (const char* key : {"ts", "item_id", "actor", "action", "triple"}) {
    if (!j.contains(key)) return bad(std::string("missing '") + key + "'");
  }
  if (!j["ts"].is_number_integer() || !j["item_id"].is_string() || !j["actor"].is_string() ||
      !j["action"].is_string()) {
    return bad("wrong field types");
  }
  ReviewEvent e;
  e.seq = seq;
  e.ts_ms = j["ts"].get<std::int64_t>();
  e.item_id = j["item_id"].get<std::string>();
  e.actor = j["actor"].get<std::string>();
  e.action = parse_review_action(j["action"].get<std::string>());
  e.triple = kg::relation_from_json(j["triple"]);
  if (j.contains("note")) {
    if (!j["note"].is_string()) return bad("note must be a string");
    e.note = j["note"].get<std::string>();
  }
  return e;
}

ReviewLog::ReviewLog(std::filesystem::path path) : path_(std::move(path)) {}

void ReviewLog::append(const ReviewEvent& event) {
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot open review log " + path_.string());
  out << event_to_json(event).dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "cannot write review log " + path_.string());
}

std::vector<ReviewEvent> ReviewLog::read(const std::filesystem::path& path) {
  std::vector<ReviewEvent> events;
  std::ifstream in(path, std::ios::binary);
  if (!in) return events;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    bool last = nl == std::string::npos;
    std::string line = content.substr(pos, last ? std::string::npos : nl - pos);
    pos = last ? content.size() : nl + 1;
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      if (last) break;  // torn write
      throw Error(ErrorCode::schema_violation,
                  "review log line " + std::to_string(events.size() + 1) + " is not JSON");
    }
    events.push_back(event_from_json(j, events.size() + 1));
  }
  return events;
}

}  // namespace kgtriage::curation
