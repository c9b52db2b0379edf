#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "kgtriage/ingest/patterns.hpp"
#include "kgtriage/ingest/segment.hpp"

namespace kgtriage::ingest {

struct AugmentResult {
  ExtractionCandidate candidate;  // triples carry provenance=augmenter
  std::size_t dropped = 0;        // malformed mentions/triples discarded
};

// The pluggable context-aware extractor. Implementations may throw
// AugmenterUnavailable or AugmenterProtocolError.
class Augmenter {
 public:
  virtual ~Augmenter() = default;
  virtual AugmentResult augment(const Chunk& chunk) = 0;
};

// Validates a response body `{"mentions":[...], "triples":[...]}`.
// Triples need string subject/object, a known predicate and confidence in
// [0,1]; mentions need surface, label, category and an in-bounds
// [begin, end). Anything else is dropped item by item. A body that is not a
// JSON object, or whose lists are not arrays, is an AugmenterProtocolError.
AugmentResult parse_augmenter_response(const Chunk& chunk, std::string_view body);

// POSTs `{"chunk_id", "text"}` as JSON to an http:// endpoint.
class HttpAugmenter : public Augmenter {
 public:
  explicit HttpAugmenter(std::string endpoint,
                         std::chrono::milliseconds timeout = std::chrono::seconds(10));

  AugmentResult augment(const Chunk& chunk) override;

  const std::string& endpoint() const noexcept { return endpoint_; }

 private:
  std::string endpoint_;
  std::string origin_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

// No augmenter configured: no candidates.
AugmentResult augment(const Chunk& chunk, Augmenter* augmenter);

}  // namespace kgtriage::ingest
