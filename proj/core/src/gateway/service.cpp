#include "kgtriage/gateway/service.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "kgtriage/engine/diagnose.hpp"
#include "kgtriage/engine/query.hpp"
#include "kgtriage/error.hpp"
#include "kgtriage/kg/snapshot.hpp"

namespace kgtriage::gateway {
namespace {

std::int64_t wall_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

// Stable id for a one-shot query so the same input always serialises the same.
std::string query_id_for(const std::set<std::string>& symptom_ids, const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const auto& id : symptom_ids) mix(id);
  mix(text);
  char buf[24];
  std::snprintf(buf, sizeof buf, "q-%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t count_started_sessions(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::uint64_t n = 0;
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_object() && j.value("event", "") == "start") ++n;
  }
  return n;
}

}  // namespace

TriageService::TriageService(ServiceConfig config, Clock clock)
    : config_(std::move(config)),
      clock_(clock ? std::move(clock) : Clock(wall_clock_ms)),
      roster_(build_roster(config_)),
      queue_([this] { return now(); },
             [this](const curation::ReviewEvent& e) {
               if (review_log_) review_log_->append(e);
             }),
      curator_(graph_, queue_) {
  config_.engine.validate();
  if (!config_.lexicon_path.empty()) {
    lexicon_ = std::make_shared<const ingest::Lexicon>(ingest::Lexicon::load_file(config_.lexicon_path));
  }
  if (!config_.patterns_path.empty()) {
    patterns_ = std::make_shared<const std::vector<ingest::RelationPattern>>(
        ingest::load_patterns_file(config_.patterns_path));
  }
  if (config_.augmenter_endpoint) {
    augmenter_ = std::make_unique<ingest::HttpAugmenter>(*config_.augmenter_endpoint,
                                                         config_.augmenter_timeout);
  }
  if (config_.data_dir.empty()) return;

  store_ = std::make_unique<DataStore>(config_.data_dir);
  if (auto g = store_->load_graph()) {
    graph_.replace(std::move(*g));
    loaded_ = true;
  }
  auto events = curation::ReviewLog::read(store_->review_log_path());
  queue_.replay(events);
  if (!events.empty()) startup_ = curator_.reconcile();
  review_log_ = std::make_unique<curation::ReviewLog>(store_->review_log_path());
  chunk_text_ = store_->load_chunks();
  next_session_ = count_started_sessions(store_->session_log_path()) + 1;
  std::lock_guard lock(save_mu_);
  saved_ = graph_.snapshot();
  if (loaded_ && startup_.status_updates > 0) store_->save_graph(*saved_);
}

TriageService::~TriageService() = default;

std::int64_t TriageService::now() const { return clock_(); }

void TriageService::require_graph() const {
  if (!loaded_) throw Error(ErrorCode::graph_not_loaded, "no graph has been loaded or ingested");
}

void TriageService::persist() {
  if (!store_) return;
  std::lock_guard lock(save_mu_);
  auto current = graph_.snapshot();
  if (current == saved_) return;
  store_->save_graph(*current);
  saved_ = std::move(current);
}

void TriageService::set_lexicon(ingest::Lexicon lexicon) {
  std::lock_guard lock(config_mu_);
  lexicon_ = std::make_shared<const ingest::Lexicon>(std::move(lexicon));
}

void TriageService::set_patterns(std::vector<ingest::RelationPattern> patterns) {
  std::lock_guard lock(config_mu_);
  patterns_ = std::make_shared<const std::vector<ingest::RelationPattern>>(std::move(patterns));
}

void TriageService::load_graph(kg::KnowledgeGraph graph) {
  graph_.replace(std::move(graph));
  loaded_ = true;
  persist();
}

ingest::IngestReport TriageService::ingest(const std::vector<ingest::Document>& docs) {
  std::shared_ptr<const ingest::Lexicon> lexicon;
  std::shared_ptr<const std::vector<ingest::RelationPattern>> patterns;
  {
    std::lock_guard lock(config_mu_);
    lexicon = lexicon_;
    patterns = patterns_;
  }
  if (!lexicon || lexicon->entries().empty()) {
    throw Error(ErrorCode::invalid_argument, "ingestion needs a non-empty lexicon");
  }
  static const std::vector<ingest::RelationPattern> kNoPatterns;
  ingest::IngestOptions options;
  options.max_chunk_chars = config_.max_chunk_chars;
  options.augmenter = augmenter_.get();

  std::vector<ingest::Chunk> chunks;
  for (const auto& doc : docs) {
    try {
      auto part = ingest::segment_document(doc, config_.max_chunk_chars);
      chunks.insert(chunks.end(), part.begin(), part.end());
    } catch (const Error&) {
      // reported per document by the pipeline
    }
  }

  auto report = graph_.write([&](kg::KnowledgeGraph& g) {
    return ingest::ingest_corpus(docs, *lexicon, patterns ? *patterns : kNoPatterns, g, options);
  });
  loaded_ = true;
  {
    std::lock_guard lock(chunk_mu_);
    for (const auto& c : chunks) chunk_text_[c.id] = c.text;
  }
  if (store_) store_->append_chunks(chunks);
  if (!report.pending_relation_ids.empty()) curator_.enqueue(report.pending_relation_ids, "ingest");
  persist();
  return report;
}

std::string TriageService::export_graph() const { return kg::snapshot(*graph_.snapshot()); }

std::vector<curation::ReviewItem> TriageService::review_items(bool include_decided) const {
  return include_decided ? queue_.items() : queue_.pending();
}

TriageService::ReviewDetail TriageService::review_item(const std::string& item_id) const {
  auto item = queue_.find(item_id);
  if (!item) throw Error(ErrorCode::not_found, "item '" + item_id + "'");
  ReviewDetail detail{*item, std::nullopt};
  if (item->triple.source_chunk) {
    std::lock_guard lock(chunk_mu_);
    auto it = chunk_text_.find(*item->triple.source_chunk);
    if (it != chunk_text_.end()) detail.source_text = it->second;
  }
  return detail;
}

std::vector<curation::ReviewItem> TriageService::enqueue(const std::vector<std::string>& relation_ids,
                                                         const std::string& actor) {
  auto items = curator_.enqueue(relation_ids, actor);
  persist();
  return items;
}

std::vector<curation::ReviewItem> TriageService::enqueue_extracted(const std::string& actor) {
  std::vector<std::string> ids;
  for (const auto& [id, r] : graph_.snapshot()->relations()) {
    if (r.status == kg::Status::extracted) ids.push_back(id);
  }
  return enqueue(ids, actor);
}

curation::ReviewItem TriageService::verdict(const std::string& item_id, curation::Verdict verdict,
                                            const std::string& reviewer,
                                            std::optional<std::uint64_t> expected_revision,
                                            std::optional<std::string> note) {
  curation::ReviewItem item;
  {
    std::lock_guard lock(verdict_mu_);
    if (!expected_revision) {
      auto current = queue_.find(item_id);
      if (!current) throw Error(ErrorCode::not_found, "item '" + item_id + "'");
      expected_revision = current->revision;
    }
    item = curator_.review(item_id, verdict, reviewer, *expected_revision, std::move(note));
    if (verdict == curation::Verdict::approve) curator_.apply_pending();
  }
  persist();
  return item;
}

engine::DiagnosisOutcome TriageService::diagnose(const std::vector<std::string>& symptoms,
                                                 const std::string& text) const {
  require_graph();
  auto graph = graph_.snapshot();
  std::set<std::string> ids;
  for (const auto& s : symptoms) {
    auto id = graph->resolve(s);
    const auto* e = id ? graph->find_entity(*id) : nullptr;
    if (e == nullptr || e->category != kg::Category::symptom) {
      throw Error(ErrorCode::unknown_entity, "'" + s + "' is not a known symptom");
    }
    ids.insert(*id);
  }
  std::string raw = text;
  if (raw.empty()) {
    for (const auto& s : symptoms) raw += (raw.empty() ? "" : ", ") + s;
  } else {
    std::shared_ptr<const ingest::Lexicon> lexicon;
    {
      std::lock_guard lock(config_mu_);
      lexicon = lexicon_;
    }
    auto lex = engine::symptom_lexicon(*graph, lexicon.get());
    auto q = engine::make_query("", raw, lex, *graph);
    ids.insert(q.symptom_ids.begin(), q.symptom_ids.end());
  }
  engine::DiagnosticQuery query;
  query.query_id = query_id_for(ids, raw);
  query.raw_text = std::move(raw);
  query.symptom_ids = std::move(ids);
  return engine::diagnose(query, config_.engine, roster_, *graph);
}

std::shared_ptr<TriageService::SessionSlot> TriageService::slot(const std::string& session_id) const {
  std::lock_guard lock(sessions_mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw Error(ErrorCode::not_found, "session '" + session_id + "'");
  return it->second;
}

// Session steps read one graph snapshot from start to finish.
TriageService::StepInputs TriageService::step_inputs() const {
  StepInputs in;
  in.graph = graph_.snapshot();
  std::shared_ptr<const ingest::Lexicon> extra;
  {
    std::lock_guard lock(config_mu_);
    extra = lexicon_;
  }
  in.symptoms = engine::symptom_lexicon(*in.graph, extra.get());
  return in;
}

SessionContext TriageService::context(const StepInputs& in) const {
  return SessionContext{*in.graph, config_.engine, roster_, in.symptoms,
                        config_.max_clarifying_questions, now()};
}

void TriageService::log_session(const Session& s, std::string_view event, Json detail) {
  if (!store_) return;
  Json line{{"ts", now()}, {"session_id", s.session_id}, {"event", event}};
  for (auto& [k, v] : detail.items()) line[k] = v;
  line["state"] = to_string(s.state);
  store_->append_session_event(line);
}

Session TriageService::start_session(std::string intake_text) {
  require_graph();
  auto inputs = step_inputs();
  std::string id;
  {
    std::lock_guard lock(sessions_mu_);
    id = "s-" + std::to_string(next_session_++);
  }
  auto entry = std::make_shared<SessionSlot>();
  entry->session = gateway::start_session(id, intake_text, context(inputs));
  {
    std::lock_guard lock(sessions_mu_);
    sessions_[id] = entry;
  }
  log_session(entry->session, "start", Json{{"text", intake_text}});
  return entry->session;
}

Session TriageService::answer(const std::string& session_id, std::string_view symptom, bool present,
                              const std::optional<std::string>& idempotency_key) {
  auto entry = slot(session_id);
  auto inputs = step_inputs();
  std::lock_guard lock(entry->mu);
  if (idempotency_key && entry->answer_keys.contains(*idempotency_key)) return entry->session;
  gateway::answer(entry->session, symptom, present, context(inputs));
  if (idempotency_key) entry->answer_keys.insert(*idempotency_key);
  log_session(entry->session, "answer", Json{{"symptom", symptom}, {"present", present}});
  return entry->session;
}

Session TriageService::session(const std::string& session_id) const {
  auto entry = slot(session_id);
  std::lock_guard lock(entry->mu);
  return entry->session;
}

Session TriageService::close_session(const std::string& session_id) {
  auto entry = slot(session_id);
  std::lock_guard lock(entry->mu);
  gateway::close(entry->session);
  log_session(entry->session, "close", Json::object());
  return entry->session;
}

Json TriageService::stats() const {
  auto g = graph_.snapshot();
  Json entities = Json::object();
  for (auto c : {kg::Category::disease, kg::Category::symptom, kg::Category::drug,
                 kg::Category::procedure, kg::Category::risk_factor, kg::Category::category,
                 kg::Category::other}) {
    entities[std::string(kg::to_string(c))] = g->entity_ids(c).size();
  }
  std::map<kg::Status, std::size_t> by_status;
  for (const auto& [id, r] : g->relations()) ++by_status[r.status];
  Json relations = Json::object();
  for (auto s : {kg::Status::extracted, kg::Status::pending_review, kg::Status::approved,
                 kg::Status::rejected}) {
    relations[std::string(kg::to_string(s))] = by_status[s];
  }
  std::map<curation::ItemState, std::size_t> by_state;
  for (const auto& item : queue_.items()) ++by_state[item.state];
  Json review = Json::object();
  for (auto s : {curation::ItemState::pending, curation::ItemState::approved,
                 curation::ItemState::rejected}) {
    review[std::string(curation::to_string(s))] = by_state[s];
  }
  std::size_t open = 0;
  std::size_t total = 0;
  {
    std::lock_guard lock(sessions_mu_);
    total = sessions_.size();
    for (const auto& [id, entry] : sessions_) {
      std::lock_guard session_lock(entry->mu);
      if (entry->session.state != SessionState::closed) ++open;
    }
  }
  return Json{{"graph_loaded", loaded_.load()},
              {"graph_version", g->version()},
              {"entities", std::move(entities)},
              {"relations", std::move(relations)},
              {"review", std::move(review)},
              {"sessions", Json{{"open", open}, {"total", total}}},
              {"trace", Json::array()}};
}

}  // namespace kgtriage::gateway
