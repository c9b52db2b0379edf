#pragma once

#include <vector>

#include "kgtriage/engine/types.hpp"

namespace kgtriage::engine {

struct AggregateResult {
  ScoredDiagnosis best;                   // argmax, ties to the smaller id
  std::vector<ScoredDiagnosis> combined;  // every candidate, ranked
};

// P_final(z) = sum_i w_i * P_i(z), P_i(z) = 0 where agent i did not score z.
// Throws EmptyResults when there are no agents or no candidates,
// InvalidArgument when the list sizes differ, and WeightSumViolation when a
// weight lies outside [0,1] or the weights do not sum to 1 within 1e-9.
AggregateResult aggregate(const std::vector<std::vector<ScoredDiagnosis>>& results,
                          const std::vector<double>& weights);

// w_i = 1/n, evaluated as (sum_i P_i(z)) / n so it equals the arithmetic mean.
AggregateResult aggregate_uniform(const std::vector<std::vector<ScoredDiagnosis>>& results);

}  // namespace kgtriage::engine
