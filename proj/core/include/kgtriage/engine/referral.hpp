#pragma once

#include <string_view>
#include <vector>

#include "kgtriage/engine/types.hpp"
#include "kgtriage/kg/graph.hpp"

namespace kgtriage::engine {

// The referral predicate: confidence < tau or the diagnosis is in X_s.
constexpr bool referral_indicator(double confidence, bool in_specialist_set, double tau) noexcept {
  return confidence < tau || in_specialist_set;
}

// X_s membership under the configured rule.
bool in_specialist_set(std::string_view diagnosis_id, const EngineConfig& config,
                       const kg::KnowledgeGraph& graph);

// Referral decision for a GP ranking (first entry is the GP's diagnosis).
//
// Targets: the top diagnosis' specialty for a specialist-diagnosis referral.
// For a below-threshold referral, the single specialty shared by every ranked
// candidate with non-zero confidence, when there is one and it is not
// general; otherwise every consultant specialty.
//
// Throws EmptyResults for an empty ranking and InvalidArgument for a
// confidence outside [0, 1].
ReferralDecision decide_referral(const std::vector<ScoredDiagnosis>& gp_ranked,
                                 const EngineConfig& config, const kg::KnowledgeGraph& graph);

}  // namespace kgtriage::engine
