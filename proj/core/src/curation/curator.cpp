#include "kgtriage/curation/curator.hpp"

#include "kgtriage/error.hpp"

namespace kgtriage::curation {

std::vector<ReviewItem> Curator::enqueue(const std::vector<std::string>& relation_ids,
                                         const std::string& actor) {
  return graph_.write([&](kg::KnowledgeGraph& g) {
    std::vector<kg::RelationTriple> triples;
    for (const auto& id : relation_ids) {
      if (queue_.contains_triple(id)) continue;
      const auto& r = g.relation(id);
      if (r.status != kg::Status::extracted && r.status != kg::Status::pending_review) {
        throw Error(ErrorCode::invalid_argument,
                    "triple '" + id + "' is " + std::string(kg::to_string(r.status)));
      }
      triples.push_back(r);
    }
    for (const auto& t : triples) g.set_status(t.id, kg::Status::pending_review);
    return queue_.enqueue(triples, actor);
  });
}

ReviewItem Curator::review(const std::string& item_id, Verdict verdict, const std::string& reviewer,
                           std::uint64_t expected_revision, std::optional<std::string> note) {
  return graph_.write([&](kg::KnowledgeGraph& g) {
    auto current = queue_.find(item_id);
    if (!current) throw Error(ErrorCode::not_found, "item '" + item_id + "'");
    if (current->revision != expected_revision) {
      throw Error(ErrorCode::revision_conflict,
                  "item '" + item_id + "' is at revision " + std::to_string(current->revision));
    }
    const auto target = verdict == Verdict::approve ? kg::Status::approved : kg::Status::rejected;
    const auto& r = g.relation(current->triple.id);
    if (r.status != target && r.status != kg::Status::extracted &&
        r.status != kg::Status::pending_review) {
      throw Error(ErrorCode::already_decided,
                  "triple '" + r.id + "' is already " + std::string(kg::to_string(r.status)));
    }
    auto item = queue_.review(item_id, verdict, reviewer, expected_revision, std::move(note));
    if (g.relation(item.triple.id).status == kg::Status::extracted) {
      g.set_status(item.triple.id, kg::Status::pending_review);
    }
    g.set_status(item.triple.id, target);
    return item;
  });
}

KnowledgeDelta Curator::apply_pending() {
  return graph_.write([&](kg::KnowledgeGraph& g) {
    auto delta = queue_.build_delta(g);
    g = apply(delta, g);
    return delta;
  });
}

Curator::ReconcileReport Curator::reconcile() {
  ReconcileReport report;
  graph_.write([&](kg::KnowledgeGraph& g) {
    for (const auto& item : queue_.items()) {
      const auto* r = g.find_relation(item.triple.id);
      if (r == nullptr) {
        ++report.missing_triples;
        continue;
      }
      const auto target = item.state == ItemState::approved   ? kg::Status::approved
                          : item.state == ItemState::rejected ? kg::Status::rejected
                                                              : kg::Status::pending_review;
      if (r->status == target) continue;
      if (r->status == kg::Status::extracted) {
        g.set_status(item.triple.id, kg::Status::pending_review);
        ++report.status_updates;
      }
      if (target == kg::Status::pending_review) continue;
      g.set_status(item.triple.id, target);
      ++report.status_updates;
      if (target == kg::Status::approved) {
        KnowledgeDelta delta;
        delta.delta_id = "reconcile-" + item.item_id;
        delta.approved_triples.push_back(g.relation(item.triple.id));
        g = apply(delta, g);
        ++report.deltas_applied;
      }
    }
  });
  queue_.set_delta_cursor(queue_.last_seq());
  return report;
}

}  // namespace kgtriage::curation
