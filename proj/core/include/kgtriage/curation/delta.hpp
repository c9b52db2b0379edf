#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kgtriage/kg/graph.hpp"

namespace kgtriage::curation {

enum class DeltaSource { expert_review, consultant_feedback };

inline std::string_view to_string(DeltaSource s) noexcept {
  return s == DeltaSource::expert_review ? "expert-review" : "consultant-feedback";
}

// ΔK: a batch of approved triples plus the entities they reference. An empty
// batch is a recorded no-op.
struct KnowledgeDelta {
  std::string delta_id;
  std::vector<kg::RelationTriple> approved_triples;
  std::vector<kg::Entity> entities;
  DeltaSource source = DeltaSource::expert_review;
  std::int64_t created_at_ms = 0;
  std::uint64_t from_seq = 0;  // review-log cursor range (from_seq, to_seq]
  std::uint64_t to_seq = 0;

  bool is_noop() const noexcept { return approved_triples.empty(); }
  kg::ApprovedSet as_approved_set() const { return {entities, approved_triples}; }
};

}  // namespace kgtriage::curation
