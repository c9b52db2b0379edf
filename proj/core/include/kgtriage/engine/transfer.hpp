#pragma once

#include <string_view>
#include <vector>

#include "kgtriage/engine/types.hpp"

namespace kgtriage::engine {

// T(A, B, q) = phi(q): packs the query's symptom ids and the GP candidates
// and logs the first hop.
TransferEnvelope transfer(const DiagnosticQuery& query, const std::vector<ScoredDiagnosis>& gp_results,
                          std::string_view from_agent, std::string_view to_agent);

// Appends a further hop; content is untouched.
void forward(TransferEnvelope& envelope, std::string_view from_agent, std::string_view to_agent);

}  // namespace kgtriage::engine
