#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgtriage/kg/types.hpp"

namespace kgtriage::engine {

struct ScoredDiagnosis {
  std::string diagnosis_id;
  double confidence = 0.0;

  friend bool operator==(const ScoredDiagnosis&, const ScoredDiagnosis&) = default;
};

// Ranking order used everywhere: confidence descending, then id ascending.
bool ranks_before(const ScoredDiagnosis& a, const ScoredDiagnosis& b) noexcept;

struct DiagnosticQuery {
  std::string query_id;
  std::string raw_text;
  std::set<std::string> symptom_ids;  // symptom entity ids resolved from raw_text
  std::map<std::string, std::string> context;

  friend bool operator==(const DiagnosticQuery&, const DiagnosticQuery&) = default;
};

enum class Tier { gp, consultant };
enum class SpecialistRule { explicit_list, specialty_not_general };
enum class Aggregation { weighted, uniform };
enum class ReferralReason { none, below_threshold, specialist_diagnosis };
enum class OutcomeKind { gp_direct, consultant_single, consultant_aggregated };

std::string_view to_string(Tier t) noexcept;
std::string_view to_string(SpecialistRule r) noexcept;
std::string_view to_string(Aggregation a) noexcept;
std::string_view to_string(ReferralReason r) noexcept;
std::string_view to_string(OutcomeKind k) noexcept;
SpecialistRule parse_specialist_rule(std::string_view text);  // throws InvalidArgument
Aggregation parse_aggregation(std::string_view text);         // throws InvalidArgument

struct EngineConfig {
  double tau = 0.7;  // referral threshold
  std::size_t top_k = 5;
  SpecialistRule specialist_rule = SpecialistRule::specialty_not_general;
  std::set<std::string> specialist_ids;  // X_s under explicit_list
  Aggregation aggregation = Aggregation::weighted;
  // Triple statuses that count as evidence when scoring. Pending and rejected
  // triples are not trusted.
  std::set<kg::Status> scoring_statuses{kg::Status::extracted, kg::Status::approved};

  // Throws InvalidArgument unless 0 <= tau <= 1 and top_k >= 1.
  void validate() const;
};

struct ReferralDecision {
  bool referral = false;
  ReferralReason reason = ReferralReason::none;
  std::vector<kg::Specialty> target_specialties;  // consultant roster order

  friend bool operator==(const ReferralDecision&, const ReferralDecision&) = default;
};

// One line of the audit trail. `step` is a logical clock (1, 2, ...), so
// traces are reproducible for a fixed input.
struct TraceEntry {
  std::size_t step = 0;
  std::string from;
  std::string to;
  std::string action;
  std::string detail;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

// phi(q): what a consultant receives.
struct TransferEnvelope {
  DiagnosticQuery query;
  std::vector<std::string> symptom_ids;  // sorted
  std::vector<ScoredDiagnosis> gp_candidates;
  std::vector<TraceEntry> trace;  // hops, append-only

  friend bool operator==(const TransferEnvelope&, const TransferEnvelope&) = default;
};

struct AgentResult {
  std::string agent_id;
  kg::Specialty specialty = kg::Specialty::general;
  std::vector<ScoredDiagnosis> results;

  friend bool operator==(const AgentResult&, const AgentResult&) = default;
};

struct DiagnosisOutcome {
  OutcomeKind kind = OutcomeKind::gp_direct;
  ScoredDiagnosis final;
  std::vector<ScoredDiagnosis> gp_results;
  std::vector<AgentResult> consultant_results;
  ReferralDecision decision;
  std::optional<TransferEnvelope> envelope;
  bool low_confidence = false;  // final confidence below tau
  bool fallback = false;        // no consultant for the target; aggregated over all
  std::vector<TraceEntry> trace;

  friend bool operator==(const DiagnosisOutcome&, const DiagnosisOutcome&) = default;
};

}  // namespace kgtriage::engine
