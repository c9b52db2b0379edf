#include "kgtriage/engine/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "kgtriage/error.hpp"

namespace kgtriage::engine {
namespace {

// Candidates in id order; per-agent contributions summed via `term(i, p)`.
template <typename Term>
std::map<std::string, double> combine(const std::vector<std::vector<ScoredDiagnosis>>& results,
                                      Term term) {
  std::map<std::string, double> totals;
  for (const auto& list : results) {
    for (const auto& s : list) totals.try_emplace(s.diagnosis_id, 0.0);
  }
  if (totals.empty()) throw Error(ErrorCode::empty_results, "no agent scored any candidate");
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const auto& s : results[i]) totals[s.diagnosis_id] += term(i, s.confidence);
  }
  return totals;
}

AggregateResult finish(const std::map<std::string, double>& totals) {
  AggregateResult out;
  bool first = true;
  for (const auto& [id, p] : totals) {
    double clamped = std::clamp(p, 0.0, 1.0);
    out.combined.push_back({id, clamped});
    if (first || clamped > out.best.confidence) {
      out.best = {id, clamped};
      first = false;
    }
  }
  std::sort(out.combined.begin(), out.combined.end(), ranks_before);
  return out;
}

}  // namespace

AggregateResult aggregate(const std::vector<std::vector<ScoredDiagnosis>>& results,
                          const std::vector<double>& weights) {
  if (results.empty()) throw Error(ErrorCode::empty_results, "no agent results");
  if (weights.size() != results.size()) {
    throw Error(ErrorCode::invalid_argument, "one weight per agent result is required");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorCode::weight_sum_violation, "weight outside [0,1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::weight_sum_violation, "weights sum to " + std::to_string(sum));
  }
  return finish(combine(results, [&](std::size_t i, double p) { return weights[i] * p; }));
}

AggregateResult aggregate_uniform(const std::vector<std::vector<ScoredDiagnosis>>& results) {
  if (results.empty()) throw Error(ErrorCode::empty_results, "no agent results");
  auto totals = combine(results, [](std::size_t, double p) { return p; });
  const auto n = static_cast<double>(results.size());
  for (auto& [id, p] : totals) p /= n;
  return finish(totals);
}

}  // namespace kgtriage::engine
