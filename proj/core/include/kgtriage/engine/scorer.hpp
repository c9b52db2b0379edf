#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgtriage/engine/types.hpp"
#include "kgtriage/kg/graph.hpp"

namespace kgtriage::engine {

// |S ∩ Sym(d)| / |Sym(d)|, Sym(d) taken over `statuses`; 0 when Sym(d) is
// empty. Throws UnknownEntity if `disease_id` is missing and InvalidArgument
// if it is not a disease.
double kg_confidence(const std::set<std::string>& symptom_ids, std::string_view disease_id,
                     const kg::KnowledgeGraph& graph, const std::set<kg::Status>& statuses);

struct ScoreRequest {
  std::string query_id;
  std::set<std::string> symptom_ids;
  std::optional<kg::Specialty> domain;  // nullopt: every disease (GP view)
  std::size_t top_k = 5;
  std::set<kg::Status> statuses{kg::Status::extracted, kg::Status::approved};
};

// f(q): maps a query to ranked (diagnosis, confidence) pairs. Output must be
// sorted by ranks_before, confidences in [0, 1], at most top_k entries.
class DiagnosticFunction {
 public:
  virtual ~DiagnosticFunction() = default;
  virtual std::vector<ScoredDiagnosis> score(const ScoreRequest& request,
                                             const kg::KnowledgeGraph& graph) const = 0;
};

// Symptom-overlap scorer over the graph. Deterministic.
class KgOverlapScorer : public DiagnosticFunction {
 public:
  std::vector<ScoredDiagnosis> score(const ScoreRequest& request,
                                     const kg::KnowledgeGraph& graph) const override;
};

// Delegates to a remote service:
//   POST {"query_id", "symptom_ids":[...], "specialty", "top_k"}
//   <- {"results":[{"diagnosis_id","confidence"}]}
// Confidences outside [0,1] are clamped; results naming unknown diseases or
// diseases outside the requested domain are discarded. Both count as protocol
// warnings. Transport failures and malformed bodies throw ScorerUnavailable.
class RemoteScorer : public DiagnosticFunction {
 public:
  explicit RemoteScorer(std::string endpoint,
                        std::chrono::milliseconds timeout = std::chrono::seconds(10));

  std::vector<ScoredDiagnosis> score(const ScoreRequest& request,
                                     const kg::KnowledgeGraph& graph) const override;

  std::size_t protocol_warnings() const noexcept { return warnings_.load(); }

 private:
  std::string endpoint_;
  std::string origin_;
  std::string path_;
  std::chrono::milliseconds timeout_;
  mutable std::atomic<std::size_t> warnings_{0};
};

struct AgentProfile {
  std::string agent_id;
  Tier tier = Tier::consultant;
  kg::Specialty specialty = kg::Specialty::general;
  double weight = 0.0;  // w_i, consultants only
  std::shared_ptr<const DiagnosticFunction> scorer;
};

// One GP plus consultants, each consultant owning a distinct specialty.
class Roster {
 public:
  Roster() = default;
  explicit Roster(std::vector<AgentProfile> agents);

  // GP plus the four consultants, uniform weights, all kg-overlap scorers.
  static Roster standard();

  // Throws InvalidArgument for a malformed roster and WeightSumViolation if
  // consultant weights are outside [0,1] or do not sum to 1 within 1e-9.
  void validate() const;

  const AgentProfile& gp() const;
  std::vector<const AgentProfile*> consultants() const;  // roster order
  const AgentProfile* consultant_for(kg::Specialty specialty) const;
  const std::vector<AgentProfile>& agents() const noexcept { return agents_; }

 private:
  std::vector<AgentProfile> agents_;
};

// Runs the agent's scorer: the GP over all diseases, a consultant over the
// diseases of its specialty only. Result sorted and truncated to top_k.
std::vector<ScoredDiagnosis> score(const AgentProfile& agent, const DiagnosticQuery& query,
                                   const kg::KnowledgeGraph& graph, const EngineConfig& config);

}  // namespace kgtriage::engine
