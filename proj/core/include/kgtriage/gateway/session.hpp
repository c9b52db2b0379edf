#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgtriage/engine/scorer.hpp"
#include "kgtriage/engine/types.hpp"
#include "kgtriage/ingest/lexicon.hpp"
#include "kgtriage/kg/graph.hpp"

namespace kgtriage::gateway {

enum class SessionState { intake, clarifying, decided, referred, consulting, final, closed };
enum class Speaker { patient, gp, consultant, system };

std::string_view to_string(SessionState s) noexcept;
std::string_view to_string(Speaker s) noexcept;
SessionState parse_session_state(std::string_view text);  // throws SchemaViolation

// intake -> clarifying -> clarifying ... -> decided | referred -> consulting
// -> final, and decided | final -> closed.
bool can_transition(SessionState from, SessionState to) noexcept;

struct TranscriptEntry {
  std::size_t turn = 0;
  Speaker speaker = Speaker::system;
  std::string text;
  std::int64_t ts_ms = 0;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct Session {
  std::string session_id;
  SessionState state = SessionState::intake;
  engine::DiagnosticQuery query;
  std::vector<TranscriptEntry> transcript;
  std::optional<std::string> pending_question;  // symptom id awaiting an answer
  std::set<std::string> asked;
  std::set<std::string> denied;
  std::size_t questions_asked = 0;
  std::vector<engine::ScoredDiagnosis> gp_ranking;
  std::optional<engine::DiagnosisOutcome> outcome;
  // Session events followed by the engine trace of the decision.
  std::vector<engine::TraceEntry> trace;

  friend bool operator==(const Session&, const Session&) = default;
};

// Everything a session step reads. The graph is a snapshot; the session does
// not keep a reference to it between calls.
struct SessionContext {
  const kg::KnowledgeGraph& graph;
  const engine::EngineConfig& engine;
  const engine::Roster& roster;
  const ingest::Lexicon& symptom_lexicon;
  std::size_t max_questions = 3;
  std::int64_t now_ms = 0;  // stamped on transcript entries
};

// Symptom that best splits the GP's current candidates: reported by most, but
// not all, of them, not already reported or asked. Ties go to the smaller id.
// Candidates with zero confidence still count.
std::optional<std::string> select_discriminator(const Session& session,
                                                const SessionContext& ctx);

// Normalises the intake text and advances as far as possible without input.
Session start_session(std::string session_id, std::string intake_text,
                      const SessionContext& ctx);

// Asks the next question, or decides when there is nothing left to ask or
// the budget is spent. A question already pending is returned again.
// WrongState unless clarifying.
std::optional<std::string> next_question(Session& session, const SessionContext& ctx);

// Records the patient's answer to the pending question and advances.
// WrongState unless clarifying; UnexpectedSymptom if `symptom_id` is not the
// pending question.
void answer(Session& session, std::string_view symptom_id, bool present,
            const SessionContext& ctx);

// WrongState unless decided or final.
void close(Session& session);

}  // namespace kgtriage::gateway
