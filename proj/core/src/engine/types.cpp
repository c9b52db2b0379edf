#include "kgtriage/engine/types.hpp"

#include "kgtriage/error.hpp"

namespace kgtriage::engine {

bool ranks_before(const ScoredDiagnosis& a, const ScoredDiagnosis& b) noexcept {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  return a.diagnosis_id < b.diagnosis_id;
}

std::string_view to_string(Tier t) noexcept { return t == Tier::gp ? "gp" : "consultant"; }

std::string_view to_string(SpecialistRule r) noexcept {
  return r == SpecialistRule::explicit_list ? "explicit-list" : "specialty-not-general";
}

std::string_view to_string(Aggregation a) noexcept {
  return a == Aggregation::weighted ? "weighted" : "uniform";
}

std::string_view to_string(ReferralReason r) noexcept {
  switch (r) {
    case ReferralReason::none: return "none";
    case ReferralReason::below_threshold: return "below-threshold";
    case ReferralReason::specialist_diagnosis: return "specialist-diagnosis";
  }
  return "none";
}

std::string_view to_string(OutcomeKind k) noexcept {
  switch (k) {
    case OutcomeKind::gp_direct: return "gp-direct";
    case OutcomeKind::consultant_single: return "consultant-single";
    case OutcomeKind::consultant_aggregated: return "consultant-aggregated";
  }
  return "gp-direct";
}

SpecialistRule parse_specialist_rule(std::string_view text) {
  if (text == "explicit-list") return SpecialistRule::explicit_list;
  if (text == "specialty-not-general") return SpecialistRule::specialty_not_general;
  throw Error(ErrorCode::invalid_argument, "unknown specialist rule '" + std::string(text) + "'");
}

Aggregation parse_aggregation(std::string_view text) {
  if (text == "weighted") return Aggregation::weighted;
  if (text == "uniform") return Aggregation::uniform;
  throw Error(ErrorCode::invalid_argument, "unknown aggregation '" + std::string(text) + "'");
}

void EngineConfig::validate() const {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "tau must lie in [0, 1]");
  }
  if (top_k < 1) throw Error(ErrorCode::invalid_argument, "top_k must be >= 1");
}

}  // namespace kgtriage::engine
