#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kgtriage/curation/review_queue.hpp"
#include "kgtriage/kg/shared_graph.hpp"

namespace kgtriage::curation {

// Keeps the review queue and the graph's triple statuses in step. Each call
// runs under the graph's exclusive writer, so a failed queue write leaves the
// graph untouched.
class Curator {
 public:
  Curator(kg::SharedGraph& graph, ReviewQueue& queue) : graph_(graph), queue_(queue) {}

  // Queues the given triples (extracted ones move to pending-review). Ids
  // already queued are skipped; unknown ids are NotFound.
  std::vector<ReviewItem> enqueue(const std::vector<std::string>& relation_ids,
                                  const std::string& actor = "system");

  // Records the verdict and sets the triple to approved or rejected.
  ReviewItem review(const std::string& item_id, Verdict verdict, const std::string& reviewer,
                    std::uint64_t expected_revision, std::optional<std::string> note = {});

  // Builds the next delta from the queue cursor and expands the graph with it.
  KnowledgeDelta apply_pending();

  struct ReconcileReport {
    std::size_t status_updates = 0;
    std::size_t deltas_applied = 0;
    std::size_t missing_triples = 0;
  };

  // After a restart: brings triple statuses in line with the replayed queue,
  // performing the same graph writes the live calls would have made, then
  // moves the delta cursor to the end of the log.
  ReconcileReport reconcile();

 private:
  kg::SharedGraph& graph_;
  ReviewQueue& queue_;
};

}  // namespace kgtriage::curation
