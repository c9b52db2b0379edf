#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgtriage/curation/delta.hpp"
#include "kgtriage/kg/graph.hpp"

namespace kgtriage::curation {

enum class ItemState { pending, approved, rejected };
enum class Verdict { approve, reject };
enum class ReviewAction { enqueue, approve, reject };

std::string_view to_string(ItemState s) noexcept;
std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(ReviewAction a) noexcept;
Verdict parse_verdict(std::string_view text);       // throws InvalidArgument
ReviewAction parse_review_action(std::string_view text);  // throws SchemaViolation

struct ReviewItem {
  std::string item_id;
  kg::RelationTriple triple;  // copy, status mirrors the item state
  kg::Provenance proposed_by = kg::Provenance::lexicon_extractor;
  ItemState state = ItemState::pending;
  std::optional<std::string> reviewer;
  std::optional<std::string> verdict_note;
  std::uint64_t revision = 0;  // bumped on every write
  std::uint64_t created_seq = 0;

  friend bool operator==(const ReviewItem&, const ReviewItem&) = default;
};

// One line of the append-only review log. `seq` is the 1-based line number.
struct ReviewEvent {
  std::uint64_t seq = 0;
  std::int64_t ts_ms = 0;
  std::string item_id;
  std::string actor;
  ReviewAction action = ReviewAction::enqueue;
  kg::RelationTriple triple;
  std::optional<std::string> note;

  friend bool operator==(const ReviewEvent&, const ReviewEvent&) = default;
};

// FIFO queue of triples awaiting expert review, with optimistic concurrency
// on each item. Every accepted write is first handed to the event sink (the
// persistent log); if the sink throws, the write does not happen.
// Thread-safe.
class ReviewQueue {
 public:
  using Clock = std::function<std::int64_t()>;
  using EventSink = std::function<void(const ReviewEvent&)>;

  explicit ReviewQueue(Clock clock = {}, EventSink sink = {});

  ReviewQueue(const ReviewQueue&) = delete;
  ReviewQueue& operator=(const ReviewQueue&) = delete;

  // Rebuilds items from a log without calling the sink. The queue must be
  // empty. The delta cursor is left at 0.
  void replay(const std::vector<ReviewEvent>& events);

  // One pending item per triple id not seen before. Triples must be
  // extracted or pending-review (InvalidArgument otherwise).
  std::vector<ReviewItem> enqueue(const std::vector<kg::RelationTriple>& triples,
                                  const std::string& actor = "system");

  // Errors, checked in this order: NotFound, RevisionConflict (stale
  // expected_revision), AlreadyDecided.
  ReviewItem review(std::string_view item_id, Verdict verdict, const std::string& reviewer,
                    std::uint64_t expected_revision, std::optional<std::string> note = {});

  std::optional<ReviewItem> find(std::string_view item_id) const;
  bool contains_triple(const std::string& triple_id) const;
  std::vector<ReviewItem> items() const;    // FIFO
  std::vector<ReviewItem> pending() const;  // FIFO
  std::vector<ReviewEvent> events() const;
  std::uint64_t last_seq() const;

  // Approvals logged after `since_seq`, with the entities they reference
  // looked up in `graph`. Pure.
  KnowledgeDelta delta_since(std::uint64_t since_seq, const kg::KnowledgeGraph& graph,
                             DeltaSource source = DeltaSource::expert_review) const;

  // delta_since(cursor) and advance the cursor past it, so consecutive deltas
  // partition the approvals.
  KnowledgeDelta build_delta(const kg::KnowledgeGraph& graph,
                             DeltaSource source = DeltaSource::expert_review);

  std::uint64_t delta_cursor() const;
  void set_delta_cursor(std::uint64_t seq);

 private:
  void record(ReviewEvent& event);  // assigns seq/ts, calls sink, appends; lock held
  void apply_event(const ReviewEvent& event);
  KnowledgeDelta delta_since_locked(std::uint64_t since_seq, const kg::KnowledgeGraph& graph,
                                    DeltaSource source) const;

  mutable std::mutex mu_;
  Clock clock_;
  EventSink sink_;
  std::vector<std::string> order_;  // FIFO item ids
  std::map<std::string, ReviewItem, std::less<>> items_;
  std::map<std::string, std::string> by_triple_;  // triple id -> item id
  std::vector<ReviewEvent> events_;
  std::uint64_t next_item_ = 1;
  std::uint64_t cursor_ = 0;
};

// Expanded graph after applying a delta.
kg::KnowledgeGraph apply(const KnowledgeDelta& delta, const kg::KnowledgeGraph& graph);

}  // namespace kgtriage::curation
