#include "kgtriage/engine/transfer.hpp"

#include <algorithm>

namespace kgtriage::engine {

TransferEnvelope transfer(const DiagnosticQuery& query, const std::vector<ScoredDiagnosis>& gp_results,
                          std::string_view from_agent, std::string_view to_agent) {
  TransferEnvelope env;
  env.query = query;
  env.symptom_ids.assign(query.symptom_ids.begin(), query.symptom_ids.end());
  env.gp_candidates = gp_results;
  std::stable_sort(env.gp_candidates.begin(), env.gp_candidates.end(), ranks_before);
  forward(env, from_agent, to_agent);
  return env;
}

void forward(TransferEnvelope& envelope, std::string_view from_agent, std::string_view to_agent) {
  envelope.trace.push_back(TraceEntry{envelope.trace.size() + 1, std::string(from_agent),
                                      std::string(to_agent), "transfer", ""});
}

}  // namespace kgtriage::engine
