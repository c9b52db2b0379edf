#pragma once

#include "kgtriage/curation/delta.hpp"
#include "kgtriage/engine/scorer.hpp"
#include "kgtriage/engine/types.hpp"
#include "kgtriage/kg/graph.hpp"

namespace kgtriage::engine {

// GP scores, the referral rule decides, and the query is either answered by
// the GP, transferred to the one target consultant, or transferred to every
// targeted consultant and aggregated. When no consultant covers the target
// specialty (or the one consultant has nothing to score) the engine falls
// back to aggregating all consultants and says so in the trace.
//
// Trace steps, in order:
//   gp "score" <top id>, gp "refer"|"retain" <reason>,
//   [gp "fallback" <specialty>],
//   gp -> c "transfer" for each consultant consulted,
//   c "score" <top id> for each consultant consulted,
//   gp "diagnose" <final id> | c "diagnose" <final id> | gp "aggregate" <final id>
DiagnosisOutcome diagnose(const DiagnosticQuery& query, const EngineConfig& config,
                          const Roster& roster, const kg::KnowledgeGraph& graph);

// K_GP(t+1) = K_GP(t) ∪ ΔK over the GP-visible graph. Throws
// IntegrityViolation if the delta references unknown entities.
kg::KnowledgeGraph update_gp_knowledge(const kg::KnowledgeGraph& gp_view,
                                       const curation::KnowledgeDelta& delta);

}  // namespace kgtriage::engine
