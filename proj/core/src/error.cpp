#include "kgtriage/error.hpp"

namespace kgtriage {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::empty_label: return "EmptyLabel";
    case ErrorCode::dangling_endpoint: return "DanglingEndpoint";
    case ErrorCode::self_loop: return "SelfLoop";
    case ErrorCode::unknown_entity: return "UnknownEntity";
    case ErrorCode::unapproved_input: return "UnapprovedInput";
    case ErrorCode::invalid_transition: return "InvalidTransition";
    case ErrorCode::schema_violation: return "SchemaViolation";
    case ErrorCode::integrity_violation: return "IntegrityViolation";
    case ErrorCode::format_error: return "FormatError";
    case ErrorCode::empty_document: return "EmptyDocument";
    case ErrorCode::augmenter_unavailable: return "AugmenterUnavailable";
    case ErrorCode::augmenter_protocol_error: return "AugmenterProtocolError";
    case ErrorCode::scorer_unavailable: return "ScorerUnavailable";
    case ErrorCode::weight_sum_violation: return "WeightSumViolation";
    case ErrorCode::empty_results: return "EmptyResults";
    case ErrorCode::no_consultant_for_specialty: return "NoConsultantForSpecialty";
    case ErrorCode::already_decided: return "AlreadyDecided";
    case ErrorCode::revision_conflict: return "RevisionConflict";
    case ErrorCode::not_found: return "NotFound";
    case ErrorCode::wrong_state: return "WrongState";
    case ErrorCode::unexpected_symptom: return "UnexpectedSymptom";
    case ErrorCode::graph_not_loaded: return "GraphNotLoaded";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

}  // namespace kgtriage
