#include "kgtriage/engine/scorer.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "http_client.hpp"
#include "kgtriage/error.hpp"
#include "kgtriage/kg/graph.hpp"

namespace kgtriage::engine {
namespace {

void rank_and_truncate(std::vector<ScoredDiagnosis>& out, std::size_t top_k) {
  std::sort(out.begin(), out.end(), ranks_before);
  if (out.size() > top_k) out.resize(top_k);
}

bool in_domain(const kg::Entity& e, const std::optional<kg::Specialty>& domain) {
  return e.category == kg::Category::disease && (!domain || e.specialty == *domain);
}

}  // namespace

double kg_confidence(const std::set<std::string>& symptom_ids, std::string_view disease_id,
                     const kg::KnowledgeGraph& graph, const std::set<kg::Status>& statuses) {
  const auto& disease = graph.entity(disease_id);
  if (disease.category != kg::Category::disease) {
    throw Error(ErrorCode::invalid_argument, "'" + disease.id + "' is not a disease");
  }
  auto sym = kg::symptoms_of(graph, disease_id, statuses);
  if (sym.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& s : sym) hits += symptom_ids.contains(s) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(sym.size());
}

std::vector<ScoredDiagnosis> KgOverlapScorer::score(const ScoreRequest& request,
                                                    const kg::KnowledgeGraph& graph) const {
  std::vector<ScoredDiagnosis> out;
  for (const auto& [id, e] : graph.entities()) {
    if (!in_domain(e, request.domain)) continue;
    out.push_back({id, kg_confidence(request.symptom_ids, id, graph, request.statuses)});
  }
  rank_and_truncate(out, request.top_k);
  return out;
}

RemoteScorer::RemoteScorer(std::string endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {
  detail::HttpTarget target;
  if (!detail::split_url(endpoint_, target)) {
    throw Error(ErrorCode::invalid_argument, "scorer endpoint must be http://: " + endpoint_);
  }
  origin_ = target.origin;
  path_ = target.path;
}

std::vector<ScoredDiagnosis> RemoteScorer::score(const ScoreRequest& request,
                                                 const kg::KnowledgeGraph& graph) const {
  nlohmann::ordered_json body;
  body["query_id"] = request.query_id;
  body["symptom_ids"] = request.symptom_ids;
  body["specialty"] = kg::to_string(request.domain.value_or(kg::Specialty::general));
  body["top_k"] = request.top_k;

  auto reply = detail::post_json({origin_, path_}, body.dump(), timeout_);
  if (!reply.reached) throw Error(ErrorCode::scorer_unavailable, endpoint_ + ": " + reply.error);
  if (reply.status != 200) {
    throw Error(ErrorCode::scorer_unavailable,
                endpoint_ + " answered HTTP " + std::to_string(reply.status));
  }
  auto doc = nlohmann::json::parse(reply.body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("results") ||
      !doc["results"].is_array()) {
    throw Error(ErrorCode::scorer_unavailable, endpoint_ + ": malformed response");
  }

  std::vector<ScoredDiagnosis> out;
  std::set<std::string> seen;
  for (const auto& item : doc["results"]) {
    if (!item.is_object() || !item.contains("diagnosis_id") || !item["diagnosis_id"].is_string() ||
        !item.contains("confidence") || !item["confidence"].is_number()) {
      ++warnings_;
      continue;
    }
    auto id = item["diagnosis_id"].get<std::string>();
    const auto* e = graph.find_entity(id);
    if (e == nullptr || !in_domain(*e, request.domain) || !seen.insert(id).second) {
      ++warnings_;
      continue;
    }
    double c = item["confidence"].get<double>();
    if (!(c >= 0.0 && c <= 1.0)) {
      ++warnings_;
      c = std::isnan(c) ? 0.0 : std::clamp(c, 0.0, 1.0);
    }
    out.push_back({std::move(id), c});
  }
  rank_and_truncate(out, request.top_k);
  return out;
}

Roster::Roster(std::vector<AgentProfile> agents) : agents_(std::move(agents)) {}

Roster Roster::standard() {
  auto scorer = std::make_shared<const KgOverlapScorer>();
  std::vector<AgentProfile> agents;
  agents.push_back({"gp", Tier::gp, kg::Specialty::general, 0.0, scorer});
  for (auto s : kg::kConsultantSpecialties) {
    agents.push_back({std::string(kg::to_string(s)), Tier::consultant, s, 0.25, scorer});
  }
  return Roster(std::move(agents));
}

void Roster::validate() const {
  std::size_t gps = 0;
  std::set<kg::Specialty> specialties;
  std::set<std::string> ids;
  double weight_sum = 0.0;
  std::size_t consultants = 0;
  for (const auto& a : agents_) {
    if (a.agent_id.empty() || !ids.insert(a.agent_id).second) {
      throw Error(ErrorCode::invalid_argument, "agent ids must be unique and non-empty");
    }
    if (!a.scorer) throw Error(ErrorCode::invalid_argument, "agent '" + a.agent_id + "' has no scorer");
    if (a.tier == Tier::gp) {
      ++gps;
      continue;
    }
    ++consultants;
    if (a.specialty == kg::Specialty::general || !specialties.insert(a.specialty).second) {
      throw Error(ErrorCode::invalid_argument,
                  "consultant '" + a.agent_id + "' needs a distinct non-general specialty");
    }
    if (!(a.weight >= 0.0 && a.weight <= 1.0)) {
      throw Error(ErrorCode::weight_sum_violation, "weight of '" + a.agent_id + "' outside [0,1]");
    }
    weight_sum += a.weight;
  }
  if (gps != 1) throw Error(ErrorCode::invalid_argument, "roster needs exactly one gp");
  if (consultants == 0) throw Error(ErrorCode::invalid_argument, "roster needs a consultant");
  if (std::abs(weight_sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::weight_sum_violation,
                "consultant weights sum to " + std::to_string(weight_sum));
  }
}

const AgentProfile& Roster::gp() const {
  for (const auto& a : agents_) {
    if (a.tier == Tier::gp) return a;
  }
  throw Error(ErrorCode::invalid_argument, "roster has no gp");
}

std::vector<const AgentProfile*> Roster::consultants() const {
  std::vector<const AgentProfile*> out;
  for (const auto& a : agents_) {
    if (a.tier == Tier::consultant) out.push_back(&a);
  }
  return out;
}

const AgentProfile* Roster::consultant_for(kg::Specialty specialty) const {
  for (const auto& a : agents_) {
    if (a.tier == Tier::consultant && a.specialty == specialty) return &a;
  }
  return nullptr;
}

std::vector<ScoredDiagnosis> score(const AgentProfile& agent, const DiagnosticQuery& query,
                                   const kg::KnowledgeGraph& graph, const EngineConfig& config) {
  if (!agent.scorer) throw Error(ErrorCode::scorer_unavailable, "agent '" + agent.agent_id + "'");
  ScoreRequest request;
  request.query_id = query.query_id;
  request.symptom_ids = query.symptom_ids;
  if (agent.tier == Tier::consultant) request.domain = agent.specialty;
  request.top_k = config.top_k;
  request.statuses = config.scoring_statuses;
  auto out = agent.scorer->score(request, graph);
  rank_and_truncate(out, config.top_k);
  return out;
}

}  // namespace kgtriage::engine
