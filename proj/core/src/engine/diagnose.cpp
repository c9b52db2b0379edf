#include "kgtriage/engine/diagnose.hpp"

#include "kgtriage/engine/aggregate.hpp"
#include "kgtriage/engine/referral.hpp"
#include "kgtriage/engine/transfer.hpp"
#include "kgtriage/error.hpp"

namespace kgtriage::engine {
namespace {

class TraceLog {
 public:
  explicit TraceLog(std::vector<TraceEntry>& out) : out_(out) {}
  void add(std::string from, std::string to, std::string action, std::string detail) {
    out_.push_back({out_.size() + 1, std::move(from), std::move(to), std::move(action),
                    std::move(detail)});
  }

 private:
  std::vector<TraceEntry>& out_;
};

std::string top_id(const std::vector<ScoredDiagnosis>& ranked) {
  return ranked.empty() ? std::string() : ranked.front().diagnosis_id;
}

}  // namespace

DiagnosisOutcome diagnose(const DiagnosticQuery& query, const EngineConfig& config,
                          const Roster& roster, const kg::KnowledgeGraph& graph) {
  config.validate();
  roster.validate();
  const auto& gp = roster.gp();

  DiagnosisOutcome out;
  TraceLog trace(out.trace);
  out.gp_results = score(gp, query, graph, config);
  if (out.gp_results.empty()) throw Error(ErrorCode::empty_results, "graph has no diseases");
  trace.add(gp.agent_id, "", "score", top_id(out.gp_results));

  out.decision = decide_referral(out.gp_results, config, graph);
  trace.add(gp.agent_id, "", out.decision.referral ? "refer" : "retain",
            std::string(to_string(out.decision.reason)));

  if (!out.decision.referral) {
    out.kind = OutcomeKind::gp_direct;
    out.final = out.gp_results.front();
    out.low_confidence = out.final.confidence < config.tau;
    trace.add(gp.agent_id, "", "diagnose", out.final.diagnosis_id);
    return out;
  }

  std::vector<const AgentProfile*> consulted;
  if (out.decision.target_specialties.size() == 1) {
    auto specialty = out.decision.target_specialties.front();
    if (const auto* c = roster.consultant_for(specialty)) {
      consulted.push_back(c);
    } else {
      out.fallback = true;
      trace.add(gp.agent_id, "", "fallback", std::string(kg::to_string(specialty)));
    }
  } else {
    for (auto specialty : out.decision.target_specialties) {
      if (const auto* c = roster.consultant_for(specialty)) consulted.push_back(c);
    }
  }

  auto consult = [&](const std::vector<const AgentProfile*>& agents) {
    for (const auto* c : agents) {
      if (!out.envelope) {
        out.envelope = transfer(query, out.gp_results, gp.agent_id, c->agent_id);
      } else {
        forward(*out.envelope, gp.agent_id, c->agent_id);
      }
      trace.add(gp.agent_id, c->agent_id, "transfer", "");
    }
    for (const auto* c : agents) {
      out.consultant_results.push_back({c->agent_id, c->specialty, score(*c, query, graph, config)});
      trace.add(c->agent_id, "", "score", top_id(out.consultant_results.back().results));
    }
  };

  if (consulted.size() == 1) {
    consult(consulted);
    const auto& only = out.consultant_results.front();
    if (!only.results.empty()) {
      out.kind = OutcomeKind::consultant_single;
      out.final = only.results.front();
      out.low_confidence = out.final.confidence < config.tau;
      trace.add(only.agent_id, "", "diagnose", out.final.diagnosis_id);
      return out;
    }
    out.fallback = true;
    trace.add(gp.agent_id, "", "fallback", std::string(kg::to_string(only.specialty)));
    consulted.clear();
    out.consultant_results.clear();
  }

  if (consulted.empty()) consulted = roster.consultants();
  consult(consulted);

  std::vector<std::vector<ScoredDiagnosis>> lists;
  std::vector<double> weights;
  for (std::size_t i = 0; i < consulted.size(); ++i) {
    lists.push_back(out.consultant_results[i].results);
    weights.push_back(consulted[i]->weight);
  }
  auto agg = config.aggregation == Aggregation::uniform ? aggregate_uniform(lists)
                                                        : aggregate(lists, weights);
  out.kind = OutcomeKind::consultant_aggregated;
  out.final = agg.best;
  out.low_confidence = out.final.confidence < config.tau;
  trace.add(gp.agent_id, "", "aggregate", out.final.diagnosis_id);
  return out;
}

kg::KnowledgeGraph update_gp_knowledge(const kg::KnowledgeGraph& gp_view,
                                       const curation::KnowledgeDelta& delta) {
  return kg::expand_graph(gp_view, delta.as_approved_set());
}

}  // namespace kgtriage::engine
