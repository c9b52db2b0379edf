#include "kgtriage/engine/referral.hpp"

#include <iterator>
#include <set>

#include "kgtriage/error.hpp"

namespace kgtriage::engine {

bool in_specialist_set(std::string_view diagnosis_id, const EngineConfig& config,
                       const kg::KnowledgeGraph& graph) {
  if (config.specialist_rule == SpecialistRule::explicit_list) {
    return config.specialist_ids.contains(std::string(diagnosis_id));
  }
  return graph.entity(diagnosis_id).specialty != kg::Specialty::general;
}

ReferralDecision decide_referral(const std::vector<ScoredDiagnosis>& gp_ranked,
                                 const EngineConfig& config, const kg::KnowledgeGraph& graph) {
  if (gp_ranked.empty()) throw Error(ErrorCode::empty_results, "GP ranking is empty");
  for (const auto& c : gp_ranked) {
    if (!(c.confidence >= 0.0 && c.confidence <= 1.0)) {
      throw Error(ErrorCode::invalid_argument, "confidence outside [0,1] for " + c.diagnosis_id);
    }
  }
  const auto& top = gp_ranked.front();
  ReferralDecision d;

  if (top.confidence < config.tau) {
    d.referral = true;
    d.reason = ReferralReason::below_threshold;
    std::set<kg::Specialty> evidence;
    for (const auto& c : gp_ranked) {
      if (c.confidence > 0.0) evidence.insert(graph.entity(c.diagnosis_id).specialty);
    }
    if (evidence.size() == 1 && *evidence.begin() != kg::Specialty::general) {
      d.target_specialties = {*evidence.begin()};
    } else {
      d.target_specialties.assign(std::begin(kg::kConsultantSpecialties),
                                  std::end(kg::kConsultantSpecialties));
    }
    return d;
  }

  if (in_specialist_set(top.diagnosis_id, config, graph)) {
    d.referral = true;
    d.reason = ReferralReason::specialist_diagnosis;
    d.target_specialties = {graph.entity(top.diagnosis_id).specialty};
  }
  return d;
}

}  // namespace kgtriage::engine
