#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgtriage {

// Every failure the library reports is an Error carrying one of these codes.
// The gateway maps codes onto HTTP statuses and CLI exit codes.
enum class ErrorCode {
  invalid_argument,
  empty_label,
  dangling_endpoint,
  self_loop,
  unknown_entity,
  unapproved_input,
  invalid_transition,
  schema_violation,
  integrity_violation,
  format_error,
  empty_document,
  augmenter_unavailable,
  augmenter_protocol_error,
  scorer_unavailable,
  weight_sum_violation,
  empty_results,
  no_consultant_for_specialty,
  already_decided,
  revision_conflict,
  not_found,
  wrong_state,
  unexpected_symptom,
  graph_not_loaded,
  io_error,
};

// CamelCase name, e.g. "SelfLoop". Used in messages and JSON error bodies.
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kgtriage
