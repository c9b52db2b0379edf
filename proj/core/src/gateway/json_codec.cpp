#include "kgtriage/gateway/json_codec.hpp"

#include "kgtriage/kg/snapshot.hpp"

namespace kgtriage::gateway {
namespace {

Json ranked(const std::vector<engine::ScoredDiagnosis>& list) {
  Json out = Json::array();
  for (const auto& d : list) out.push_back(to_json(d));
  return out;
}

template <typename T>
Json optional_string(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

Json to_json(const engine::ScoredDiagnosis& d) {
  return Json{{"diagnosis_id", d.diagnosis_id}, {"confidence", d.confidence}};
}

Json to_json(const engine::TraceEntry& t) {
  return Json{{"step", t.step}, {"from", t.from}, {"to", t.to}, {"action", t.action},
              {"detail", t.detail}};
}

Json to_json(const std::vector<engine::TraceEntry>& trace) {
  Json out = Json::array();
  for (const auto& t : trace) out.push_back(to_json(t));
  return out;
}

Json to_json(const engine::DiagnosticQuery& q) {
  Json context = Json::object();
  for (const auto& [k, v] : q.context) context[k] = v;
  return Json{{"query_id", q.query_id},
              {"raw_text", q.raw_text},
              {"symptom_ids", q.symptom_ids},
              {"context", std::move(context)}};
}

Json to_json(const engine::ReferralDecision& d) {
  Json targets = Json::array();
  for (auto s : d.target_specialties) targets.push_back(kg::to_string(s));
  return Json{{"referral", d.referral},
              {"reason", engine::to_string(d.reason)},
              {"target_specialties", std::move(targets)}};
}

Json to_json(const engine::TransferEnvelope& e) {
  return Json{{"query", to_json(e.query)},
              {"symptom_ids", e.symptom_ids},
              {"gp_candidates", ranked(e.gp_candidates)},
              {"trace", to_json(e.trace)}};
}

Json to_json(const engine::DiagnosisOutcome& o) {
  Json consultants = Json::array();
  for (const auto& r : o.consultant_results) {
    consultants.push_back(Json{{"agent_id", r.agent_id},
                               {"specialty", kg::to_string(r.specialty)},
                               {"results", ranked(r.results)}});
  }
  Json out{{"kind", engine::to_string(o.kind)},
           {"final", to_json(o.final)},
           {"gp_results", ranked(o.gp_results)},
           {"consultant_results", std::move(consultants)},
           {"decision", to_json(o.decision)}};
  if (o.envelope) {
    out["envelope"] = to_json(*o.envelope);
  } else {
    out["envelope"] = nullptr;
  }
  out["low_confidence"] = o.low_confidence;
  out["fallback"] = o.fallback;
  out["trace"] = to_json(o.trace);
  return out;
}

Json to_json(const Session& s) {
  Json transcript = Json::array();
  for (const auto& t : s.transcript) {
    transcript.push_back(
        Json{{"turn", t.turn}, {"speaker", to_string(t.speaker)}, {"text", t.text}, {"ts", t.ts_ms}});
  }
  Json out{{"session_id", s.session_id},
           {"state", to_string(s.state)},
           {"query", to_json(s.query)},
           {"transcript", std::move(transcript)},
           {"pending_question", optional_string(s.pending_question)},
           {"questions_asked", s.questions_asked},
           {"gp_ranking", ranked(s.gp_ranking)}};
  if (s.outcome) {
    out["outcome"] = to_json(*s.outcome);
  } else {
    out["outcome"] = nullptr;
  }
  out["trace"] = to_json(s.trace);
  return out;
}

Json to_json(const curation::ReviewItem& item) {
  return Json{{"item_id", item.item_id},
              {"triple", kg::relation_to_json(item.triple)},
              {"proposed_by", kg::to_string(item.proposed_by)},
              {"state", curation::to_string(item.state)},
              {"reviewer", optional_string(item.reviewer)},
              {"note", optional_string(item.verdict_note)},
              {"revision", item.revision}};
}

Json to_json(const ingest::IngestReport& r) {
  Json errors = Json::array();
  for (const auto& e : r.errors) {
    errors.push_back(Json{{"doc_id", e.doc_id}, {"error", error_name(e.code)}, {"message", e.message}});
  }
  return Json{{"documents", r.documents},
              {"chunks", r.chunks},
              {"mentions", r.mentions},
              {"triples_extracted", r.triples_extracted},
              {"triples_pending", r.triples_pending},
              {"entities_added", r.entities_added},
              {"relations_added", r.relations_added},
              {"augmenter_dropped", r.augmenter_dropped},
              {"augmenter_failures", r.augmenter_failures},
              {"pending_relation_ids", r.pending_relation_ids},
              {"errors", std::move(errors)}};
}

Json error_json(ErrorCode code, std::string_view message) {
  return Json{{"error", error_name(code)}, {"message", message}, {"trace", Json::array()}};
}

}  // namespace kgtriage::gateway
