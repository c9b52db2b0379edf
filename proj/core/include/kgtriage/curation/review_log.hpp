#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgtriage/curation/review_queue.hpp"

namespace kgtriage::curation {

// Line format: {"ts","item_id","actor","action","triple":{...}} plus "note"
// when the verdict carried one. `triple` uses the graph export relation shape.
nlohmann::ordered_json event_to_json(const ReviewEvent& event);
ReviewEvent event_from_json(const nlohmann::json& j, std::uint64_t seq);  // SchemaViolation

// Append-only NDJSON file. Each append is flushed before returning.
class ReviewLog {
 public:
  explicit ReviewLog(std::filesystem::path path);

  void append(const ReviewEvent& event);  // throws IoError

  // Missing file: empty log. A torn final line (no trailing newline, invalid
  // JSON) is ignored; any other malformed line is a SchemaViolation.
  static std::vector<ReviewEvent> read(const std::filesystem::path& path);

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace kgtriage::curation
