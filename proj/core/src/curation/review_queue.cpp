#include "kgtriage/curation/review_queue.hpp"

#include <chrono>
#include <set>

#include "kgtriage/engine/diagnose.hpp"
#include "kgtriage/error.hpp"

namespace kgtriage::curation {
namespace {

std::int64_t wall_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::uint64_t item_number(std::string_view id) {
  constexpr std::string_view kPrefix = "item-";
  if (!id.starts_with(kPrefix)) return 0;
  std::uint64_t n = 0;
  for (char c : id.substr(kPrefix.size())) {
    if (c < '0' || c > '9') return 0;
    n = n * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return n;
}

}  // namespace

std::string_view to_string(ItemState s) noexcept {
  switch (s) {
    case ItemState::pending: return "pending";
    case ItemState::approved: return "approved";
    case ItemState::rejected: return "rejected";
  }
  return "pending";
}

std::string_view to_string(Verdict v) noexcept { return v == Verdict::approve ? "approve" : "reject"; }

std::string_view to_string(ReviewAction a) noexcept {
  switch (a) {
    case ReviewAction::enqueue: return "enqueue";
    case ReviewAction::approve: return "approve";
    case ReviewAction::reject: return "reject";
  }
  return "enqueue";
}

Verdict parse_verdict(std::string_view text) {
  if (text == "approve") return Verdict::approve;
  if (text == "reject") return Verdict::reject;
  throw Error(ErrorCode::invalid_argument, "verdict must be approve or reject");
}

ReviewAction parse_review_action(std::string_view text) {
  if (text == "enqueue") return ReviewAction::enqueue;
  if (text == "approve") return ReviewAction::approve;
  if (text == "reject") return ReviewAction::reject;
  throw Error(ErrorCode::schema_violation, "unknown review action '" + std::string(text) + "'");
}

ReviewQueue::ReviewQueue(Clock clock, EventSink sink)
    : clock_(clock ? std::move(clock) : Clock(wall_clock_ms)), sink_(std::move(sink)) {}

void ReviewQueue::replay(const std::vector<ReviewEvent>& events) {
  std::lock_guard lock(mu_);
  if (!events_.empty()) throw Error(ErrorCode::invalid_argument, "replay needs an empty queue");
  for (const auto& e : events) {
    if (e.seq != events_.size() + 1) {
      throw Error(ErrorCode::integrity_violation,
                  "review log sequence gap at " + std::to_string(e.seq));
    }
    apply_event(e);
    events_.push_back(e);
  }
}

void ReviewQueue::apply_event(const ReviewEvent& e) {
  if (e.action == ReviewAction::enqueue) {
    if (items_.contains(e.item_id)) {
      throw Error(ErrorCode::integrity_violation, "item '" + e.item_id + "' enqueued twice");
    }
    ReviewItem item;
    item.item_id = e.item_id;
    item.triple = e.triple;
    item.proposed_by = e.triple.provenance;
    item.created_seq = e.seq;
    order_.push_back(e.item_id);
    by_triple_[e.triple.id] = e.item_id;
    items_.emplace(e.item_id, std::move(item));
    next_item_ = std::max(next_item_, item_number(e.item_id) + 1);
    return;
  }
  auto it = items_.find(e.item_id);
  if (it == items_.end() || it->second.state != ItemState::pending) {
    throw Error(ErrorCode::integrity_violation, "verdict for unknown or decided item '" + e.item_id + "'");
  }
  auto& item = it->second;
  item.state = e.action == ReviewAction::approve ? ItemState::approved : ItemState::rejected;
  item.triple.status = e.action == ReviewAction::approve ? kg::Status::approved : kg::Status::rejected;
  item.reviewer = e.actor;
  item.verdict_note = e.note;
  ++item.revision;
}

void ReviewQueue::record(ReviewEvent& event) {
  event.seq = events_.size() + 1;
  event.ts_ms = clock_();
  if (sink_) sink_(event);
  apply_event(event);
  events_.push_back(event);
}

std::vector<ReviewItem> ReviewQueue::enqueue(const std::vector<kg::RelationTriple>& triples,
                                             const std::string& actor) {
  for (const auto& t : triples) {
    if (t.status != kg::Status::extracted && t.status != kg::Status::pending_review) {
      throw Error(ErrorCode::invalid_argument,
                  "triple '" + t.id + "' is " + std::string(kg::to_string(t.status)));
    }
  }
  std::lock_guard lock(mu_);
  std::vector<ReviewItem> created;
  for (const auto& t : triples) {
    if (by_triple_.contains(t.id)) continue;
    ReviewEvent e;
    e.item_id = "item-" + std::to_string(next_item_);
    e.actor = actor;
    e.action = ReviewAction::enqueue;
    e.triple = t;
    e.triple.status = kg::Status::pending_review;
    record(e);
    created.push_back(items_.at(e.item_id));
  }
  return created;
}

ReviewItem ReviewQueue::review(std::string_view item_id, Verdict verdict,
                               const std::string& reviewer, std::uint64_t expected_revision,
                               std::optional<std::string> note) {
  std::lock_guard lock(mu_);
  auto it = items_.find(item_id);
  if (it == items_.end()) throw Error(ErrorCode::not_found, "item '" + std::string(item_id) + "'");
  const auto& item = it->second;
  if (item.revision != expected_revision) {
    throw Error(ErrorCode::revision_conflict,
                "item '" + item.item_id + "' is at revision " + std::to_string(item.revision) +
                    ", expected " + std::to_string(expected_revision));
  }
  if (item.state != ItemState::pending) {
    throw Error(ErrorCode::already_decided,
                "item '" + item.item_id + "' is " + std::string(to_string(item.state)));
  }
  if (reviewer.empty()) throw Error(ErrorCode::invalid_argument, "reviewer is required");

  ReviewEvent e;
  e.item_id = item.item_id;
  e.actor = reviewer;
  e.action = verdict == Verdict::approve ? ReviewAction::approve : ReviewAction::reject;
  e.triple = item.triple;
  e.triple.status = verdict == Verdict::approve ? kg::Status::approved : kg::Status::rejected;
  e.note = std::move(note);
  record(e);
  return items_.at(e.item_id);
}

std::optional<ReviewItem> ReviewQueue::find(std::string_view item_id) const {
  std::lock_guard lock(mu_);
  auto it = items_.find(item_id);
  if (it == items_.end()) return std::nullopt;
  return it->second;
}

bool ReviewQueue::contains_triple(const std::string& triple_id) const {
  std::lock_guard lock(mu_);
  return by_triple_.contains(triple_id);
}

std::vector<ReviewItem> ReviewQueue::items() const {
  std::lock_guard lock(mu_);
  std::vector<ReviewItem> out;
  for (const auto& id : order_) out.push_back(items_.find(id)->second);
  return out;
}

std::vector<ReviewItem> ReviewQueue::pending() const {
  std::lock_guard lock(mu_);
  std::vector<ReviewItem> out;
  for (const auto& id : order_) {
    const auto& item = items_.find(id)->second;
    if (item.state == ItemState::pending) out.push_back(item);
  }
  return out;
}

std::vector<ReviewEvent> ReviewQueue::events() const {
  std::lock_guard lock(mu_);
  return events_;
}

std::uint64_t ReviewQueue::last_seq() const {
  std::lock_guard lock(mu_);
  return events_.size();
}

KnowledgeDelta ReviewQueue::delta_since(std::uint64_t since_seq, const kg::KnowledgeGraph& graph,
                                        DeltaSource source) const {
  std::lock_guard lock(mu_);
  return delta_since_locked(since_seq, graph, source);
}

KnowledgeDelta ReviewQueue::delta_since_locked(std::uint64_t since_seq,
                                               const kg::KnowledgeGraph& graph,
                                               DeltaSource source) const {
  KnowledgeDelta delta;
  delta.source = source;
  delta.from_seq = since_seq;
  delta.to_seq = std::max<std::uint64_t>(since_seq, events_.size());
  delta.delta_id = "delta-" + std::to_string(delta.from_seq) + "-" + std::to_string(delta.to_seq);
  delta.created_at_ms = clock_();

  std::set<std::string> entity_ids;
  for (std::size_t i = since_seq; i < events_.size(); ++i) {
    const auto& e = events_[i];
    if (e.action != ReviewAction::approve) continue;
    delta.approved_triples.push_back(e.triple);
    entity_ids.insert(e.triple.subject);
    entity_ids.insert(e.triple.object);
  }
  for (const auto& id : entity_ids) {
    if (const auto* e = graph.find_entity(id)) delta.entities.push_back(*e);
  }
  return delta;
}

KnowledgeDelta ReviewQueue::build_delta(const kg::KnowledgeGraph& graph, DeltaSource source) {
  std::lock_guard lock(mu_);
  auto delta = delta_since_locked(cursor_, graph, source);
  cursor_ = delta.to_seq;
  return delta;
}

std::uint64_t ReviewQueue::delta_cursor() const {
  std::lock_guard lock(mu_);
  return cursor_;
}

void ReviewQueue::set_delta_cursor(std::uint64_t seq) {
  std::lock_guard lock(mu_);
  cursor_ = seq;
}

kg::KnowledgeGraph apply(const KnowledgeDelta& delta, const kg::KnowledgeGraph& graph) {
  for (const auto& t : delta.approved_triples) {
    if (t.status != kg::Status::approved) {
      throw Error(ErrorCode::unapproved_input, "delta '" + delta.delta_id + "' carries " + t.id);
    }
  }
  return engine::update_gp_knowledge(graph, delta);
}

}  // namespace kgtriage::curation
