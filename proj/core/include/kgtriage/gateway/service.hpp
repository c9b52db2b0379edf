#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgtriage/curation/curator.hpp"
#include "kgtriage/curation/review_log.hpp"
#include "kgtriage/curation/review_queue.hpp"
#include "kgtriage/engine/scorer.hpp"
#include "kgtriage/gateway/config.hpp"
#include "kgtriage/gateway/json_codec.hpp"
#include "kgtriage/gateway/session.hpp"
#include "kgtriage/gateway/store.hpp"
#include "kgtriage/ingest/augmenter.hpp"
#include "kgtriage/ingest/lexicon.hpp"
#include "kgtriage/ingest/patterns.hpp"
#include "kgtriage/ingest/pipeline.hpp"
#include "kgtriage/kg/shared_graph.hpp"

namespace kgtriage::gateway {

// The triage service behind both the HTTP gateway and the CLI. Owns the
// shared graph, the review queue and the live sessions.
//
// With a non-empty data_dir the graph is saved after every change and the
// review log is appended before each review write. Constructing the service
// over an existing directory loads graph.json, replays review.log and
// reconciles the two. An empty data_dir keeps everything in memory.
class TriageService {
 public:
  using Clock = std::function<std::int64_t()>;  // ms since epoch

  explicit TriageService(ServiceConfig config, Clock clock = {});
  ~TriageService();

  TriageService(const TriageService&) = delete;
  TriageService& operator=(const TriageService&) = delete;

  const ServiceConfig& config() const noexcept { return config_; }
  const engine::Roster& roster() const noexcept { return roster_; }
  const curation::Curator::ReconcileReport& startup_report() const noexcept { return startup_; }

  // True once a graph was loaded from disk, installed, or ingested into.
  bool graph_loaded() const noexcept { return loaded_.load(); }
  std::shared_ptr<const kg::KnowledgeGraph> graph() const { return graph_.snapshot(); }

  void set_lexicon(ingest::Lexicon lexicon);
  void set_patterns(std::vector<ingest::RelationPattern> patterns);
  void load_graph(kg::KnowledgeGraph graph);

  // Runs the ingestion pipeline and queues its pending-review triples.
  // InvalidArgument if no lexicon is configured.
  ingest::IngestReport ingest(const std::vector<ingest::Document>& docs);
  std::string export_graph() const;

  std::vector<curation::ReviewItem> review_items(bool include_decided = false) const;

  struct ReviewDetail {
    curation::ReviewItem item;
    std::optional<std::string> source_text;  // text of the triple's source chunk, if known
  };
  ReviewDetail review_item(const std::string& item_id) const;  // NotFound
  std::vector<curation::ReviewItem> enqueue(const std::vector<std::string>& relation_ids,
                                            const std::string& actor = "system");
  std::vector<curation::ReviewItem> enqueue_extracted(const std::string& actor = "system");
  // Without expected_revision the item's current revision is used. An
  // approval is folded into the graph immediately.
  curation::ReviewItem verdict(const std::string& item_id, curation::Verdict verdict,
                               const std::string& reviewer,
                               std::optional<std::uint64_t> expected_revision = {},
                               std::optional<std::string> note = {});

  // One-shot diagnosis. `symptoms` are ids, labels or aliases of symptom
  // entities (UnknownEntity otherwise); `text` is scanned for further
  // symptom mentions. GraphNotLoaded before any graph exists.
  engine::DiagnosisOutcome diagnose(const std::vector<std::string>& symptoms,
                                    const std::string& text = {}) const;

  Session start_session(std::string intake_text);
  // A repeated idempotency key returns the session without answering again.
  Session answer(const std::string& session_id, std::string_view symptom, bool present,
                 const std::optional<std::string>& idempotency_key = {});
  Session session(const std::string& session_id) const;
  Session close_session(const std::string& session_id);

  Json stats() const;

 private:
  struct SessionSlot {
    std::mutex mu;
    Session session;
    std::set<std::string> answer_keys;
  };

  struct StepInputs {
    std::shared_ptr<const kg::KnowledgeGraph> graph;
    ingest::Lexicon symptoms;
  };

  StepInputs step_inputs() const;
  SessionContext context(const StepInputs& in) const;
  std::shared_ptr<SessionSlot> slot(const std::string& session_id) const;
  void require_graph() const;
  void persist();
  void log_session(const Session& s, std::string_view event, Json detail);
  std::int64_t now() const;

  ServiceConfig config_;
  Clock clock_;
  engine::Roster roster_;
  std::unique_ptr<DataStore> store_;
  std::unique_ptr<curation::ReviewLog> review_log_;
  std::unique_ptr<ingest::HttpAugmenter> augmenter_;

  kg::SharedGraph graph_;
  curation::ReviewQueue queue_;
  curation::Curator curator_;
  curation::Curator::ReconcileReport startup_;
  std::atomic<bool> loaded_{false};

  mutable std::mutex config_mu_;  // lexicon and patterns
  std::shared_ptr<const ingest::Lexicon> lexicon_;
  std::shared_ptr<const std::vector<ingest::RelationPattern>> patterns_;

  mutable std::mutex chunk_mu_;
  std::map<std::string, std::string> chunk_text_;

  std::mutex verdict_mu_;  // one delta per approval
  std::mutex save_mu_;
  std::shared_ptr<const kg::KnowledgeGraph> saved_;

  mutable std::mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<SessionSlot>> sessions_;
  std::uint64_t next_session_ = 1;
};

}  // namespace kgtriage::gateway
